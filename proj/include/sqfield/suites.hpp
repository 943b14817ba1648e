#pragma once

// Verification suites over sweeps of fields and digit sets.
//
// A sweep expands into independent tasks (one per field/digit-set instance or
// oracle instance); tasks run on a small worker pool and their rows are
// concatenated in task order, so output never depends on scheduling.

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "sqfield/bounds.hpp"
#include "sqfield/counting.hpp"
#include "sqfield/digit_sets.hpp"
#include "sqfield/oracles.hpp"
#include "sqfield/report.hpp"

namespace sqfield {

inline constexpr std::array<std::string_view, 14> kSuites = {
    "identity", "est1",      "thmA",   "thmB",   "thm1",      "thm1-existence", "thm2",
    "lemmaD",   "lemmaE",    "lemma1", "partition", "energy", "deltaH",         "corC-report"};

inline bool is_known_suite(std::string_view s) {
  return std::find(kSuites.begin(), kSuites.end(), s) != kSuites.end();
}

struct SweepConfig {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> fields;  // (p, r)
  /// Digit specs; empty means the suite default.
  std::vector<std::string> digits;
  std::vector<std::string> suites;
  std::uint64_t budget = kDefaultBudget;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::string out;  // empty: standard output
  std::string format = "csv";
  double user_constant = 1.0;
  double eps = 0.25;
  std::vector<std::uint32_t> H = {1, 2};
  std::vector<std::uint64_t> orders = {2, 3, 4};
  std::uint32_t nu_max = 4;
  std::vector<std::uint32_t> nu = {1, 2, 3};
  std::uint64_t instances = 200;
  std::uint64_t samples = 100000;
};

namespace detail {

inline std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    const auto piece = strip(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (!piece.empty()) out.emplace_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s, std::size_t line, std::size_t col) {
  T v{};
  s = strip(s);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("expected a number, got '" + std::string(s) + "'", line, col);
  return v;
}

inline double parse_real(std::string_view s, std::size_t line, std::size_t col) {
  const std::string str(strip(s));
  char* end = nullptr;
  const double v = std::strtod(str.c_str(), &end);
  if (str.empty() || end != str.c_str() + str.size()) throw ParseError("expected a real number, got '" + str + "'", line, col);
  return v;
}

template <typename T>
std::vector<T> parse_list(std::string_view s, std::size_t line, std::size_t col) {
  std::vector<T> out;
  for (const auto& piece : split(s, ',')) out.push_back(parse_number<T>(piece, line, col));
  if (out.empty()) throw ParseError("empty list", line, col);
  return out;
}

}  // namespace detail

/// Applies one key=value setting; used by both the config file and CLI flags.
inline void apply_setting(SweepConfig& cfg, std::string_view key, std::string_view value, std::size_t line = 0,
                          std::size_t col = 0) {
  using namespace detail;
  key = strip(key);
  value = strip(value);
  auto rebuild_fields = [&](const std::vector<std::uint32_t>& ps, const std::vector<std::uint32_t>& rs) {
    cfg.fields.clear();
    for (auto p : ps)
      for (auto r : rs) cfg.fields.emplace_back(p, r);
  };
  if (key == "fields") {
    cfg.fields.clear();
    for (const auto& item : split(value, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ParseError("field '" + item + "' must look like p:r", line, col);
      cfg.fields.emplace_back(parse_number<std::uint32_t>(std::string_view(item).substr(0, colon), line, col),
                              parse_number<std::uint32_t>(std::string_view(item).substr(colon + 1), line, col));
    }
  } else if (key == "p" || key == "r") {
    // p and r lists combine into their Cartesian product.
    std::vector<std::uint32_t> ps, rs;
    for (const auto& [p, r] : cfg.fields) {
      if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
      if (std::find(rs.begin(), rs.end(), r) == rs.end()) rs.push_back(r);
    }
    if (key == "p") ps = parse_list<std::uint32_t>(value, line, col);
    if (key == "r") rs = parse_list<std::uint32_t>(value, line, col);
    if (rs.empty()) rs = {1};
    if (ps.empty()) ps = {3};
    rebuild_fields(ps, rs);
  } else if (key == "digits") {
    cfg.digits = split(value, ';');
  } else if (key == "suite" || key == "suites") {
    cfg.suites = split(value, ',');
    for (const auto& s : cfg.suites)
      if (!is_known_suite(s)) throw ParseError("unknown suite '" + s + "'", line, col);
  } else if (key == "budget") {
    cfg.budget = parse_number<std::uint64_t>(value, line, col);
    if (cfg.budget == 0) throw ParseError("budget must be positive", line, col);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(value, line, col);
  } else if (key == "jobs") {
    cfg.jobs = std::max(1u, parse_number<unsigned>(value, line, col));
  } else if (key == "out") {
    cfg.out = std::string(value);
  } else if (key == "format") {
    if (value != "csv" && value != "json") throw ParseError("format must be csv or json", line, col);
    cfg.format = std::string(value);
  } else if (key == "const") {
    cfg.user_constant = parse_real(value, line, col);
    if (!(cfg.user_constant > 0)) throw ParseError("const must be positive", line, col);
  } else if (key == "eps") {
    cfg.eps = parse_real(value, line, col);
  } else if (key == "H") {
    cfg.H = parse_list<std::uint32_t>(value, line, col);
  } else if (key == "orders" || key == "s") {
    cfg.orders = parse_list<std::uint64_t>(value, line, col);
  } else if (key == "nu_max") {
    cfg.nu_max = parse_number<std::uint32_t>(value, line, col);
  } else if (key == "nu") {
    cfg.nu = parse_list<std::uint32_t>(value, line, col);
  } else if (key == "instances") {
    cfg.instances = parse_number<std::uint64_t>(value, line, col);
  } else if (key == "samples") {
    cfg.samples = parse_number<std::uint64_t>(value, line, col);
  } else {
    throw ParseError("unknown key '" + std::string(key) + "'", line, col);
  }
}

/// Parses a plain-text key=value config; '#' starts a comment.
inline SweepConfig parse_config(std::string_view text, SweepConfig cfg = {}) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (detail::strip(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      const auto first = line.find_first_not_of(" \t");
      throw ParseError("expected key = value", line_no, first + 1);
    }
    const auto value_col = line.find_first_not_of(" \t", eq + 1);
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1), line_no,
                  (value_col == std::string_view::npos ? eq + 1 : value_col) + 1);
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Digit specs

namespace detail {

inline bool spec_is_random(std::string_view spec) { return spec.starts_with("random"); }

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = saturating_mul(out, n - k + i) / i;
  }
  return out;
}

inline DigitSet random_subset(std::uint32_t p, std::uint32_t m, std::mt19937_64& rng) {
  std::vector<std::uint32_t> all(p);
  std::iota(all.begin(), all.end(), 0u);
  // Partial Fisher-Yates with explicit draws (std::shuffle is unspecified).
  for (std::uint32_t i = 0; i < m; ++i) {
    const auto j = i + std::uniform_int_distribution<std::uint32_t>(0, p - 1 - i)(rng);
    std::swap(all[i], all[j]);
  }
  all.resize(m);
  return DigitSet(p, std::move(all));
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  // splitmix64 over the combined inputs.
  std::uint64_t x = seed;
  for (std::uint64_t v : {a, b, c}) {
    x += 0x9e3779b97f4a7c15ull + v;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    x ^= x >> 31;
  }
  return x;
}

}  // namespace detail

/// Expands one digit spec for F_{p^r}:
///   "0-4,7"          explicit uniform set     "0-2|1,3"        explicit per-coordinate sets
///   "full"           D = F_p                  "intervals"      {0..t-1}, t = 1..p
///   "intervals:a-b"  {0..t-1}, t = a..b       "all-intervals"  every {a..b} with 0 <= a <= b < p
///   "size:m"         all m-subsets            "random:n[:m]"   n random subsets (of size m)
///   "random-box:n"   n random per-coordinate boxes
inline std::vector<DigitBox> expand_digit_spec(std::string_view spec, std::uint32_t p, std::uint32_t r,
                                               std::optional<std::uint64_t> seed, std::uint64_t spec_index,
                                               std::uint64_t budget) {
  std::vector<DigitBox> out;
  auto prefix = [&](std::uint32_t t) { out.push_back(DigitBox::uniform(r, DigitSet::range(p, 0, t))); };
  if (spec == "full") {
    out.push_back(DigitBox::uniform(r, DigitSet::full(p)));
  } else if (spec == "intervals") {
    for (std::uint32_t t = 1; t <= p; ++t) prefix(t);
  } else if (spec.starts_with("intervals:")) {
    const auto range = spec.substr(10);
    const auto dash = range.find('-');
    if (dash == std::string_view::npos) throw ParseError("digit spec '" + std::string(spec) + "': expected intervals:a-b");
    const auto a = detail::parse_number<std::uint32_t>(range.substr(0, dash), 0, 0);
    const auto b = std::min(p, detail::parse_number<std::uint32_t>(range.substr(dash + 1), 0, 0));
    for (std::uint32_t t = std::max(1u, a); t <= b; ++t) prefix(t);
  } else if (spec == "all-intervals") {
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t len = 1; a + len <= p; ++len) out.push_back(DigitBox::uniform(r, DigitSet::range(p, a, len)));
  } else if (spec.starts_with("size:")) {
    const auto m = detail::parse_number<std::uint32_t>(spec.substr(5), 0, 0);
    if (m == 0 || m > p) throw ParseError("digit spec '" + std::string(spec) + "': size must be in [1, p]");
    check_budget(detail::binomial(p, m), budget, "size:" + std::to_string(m) + " subsets");
    std::vector<std::uint32_t> pick(m);
    std::iota(pick.begin(), pick.end(), 0u);
    while (true) {
      out.push_back(DigitBox::uniform(r, DigitSet(p, pick)));
      std::size_t i = m;
      while (i-- > 0 && pick[i] == p - m + i) {
      }
      if (i == static_cast<std::size_t>(-1)) break;
      ++pick[i];
      for (std::size_t j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
    }
  } else if (detail::spec_is_random(spec)) {
    if (!seed) throw ParseError("digit spec '" + std::string(spec) + "' needs a seed");
    const bool boxed = spec.starts_with("random-box:");
    const auto parts = detail::split(spec.substr(boxed ? 11 : 7), ':');
    if (parts.empty() || (!boxed && !spec.starts_with("random:")))
      throw ParseError("digit spec '" + std::string(spec) + "': expected random:n[:m] or random-box:n");
    const auto n = detail::parse_number<std::uint64_t>(parts[0], 0, 0);
    std::optional<std::uint32_t> m;
    if (parts.size() > 1) m = detail::parse_number<std::uint32_t>(parts[1], 0, 0);
    if (m && (*m == 0 || *m > p)) throw ParseError("digit spec '" + std::string(spec) + "': size must be in [1, p]");
    std::mt19937_64 rng(detail::mix_seed(*seed, p, r, spec_index));
    auto size = [&] { return m ? *m : std::uniform_int_distribution<std::uint32_t>(1, p)(rng); };
    for (std::uint64_t i = 0; i < n; ++i) {
      if (boxed) {
        std::vector<DigitSet> sets;
        for (std::uint32_t c = 0; c < r; ++c) sets.push_back(detail::random_subset(p, size(), rng));
        out.emplace_back(p, std::move(sets));
      } else {
        out.push_back(DigitBox::uniform(r, detail::random_subset(p, size(), rng)));
      }
    }
  } else {
    out.push_back(DigitBox::parse(p, r, spec));
  }
  return out;
}

inline std::vector<std::string> default_digit_specs(std::string_view suite) {
  if (suite == "thmB" || suite == "thm1-existence" || suite == "corC-report") return {"intervals"};
  return {"all-intervals", "random:200"};
}

// ---------------------------------------------------------------------------
// Suite execution

struct FieldData {
  Field field;
  QuadraticCharacter chi;

  explicit FieldData(Field f) : field(f), chi(std::move(f)) {}
};

struct Task {
  std::string suite;
  std::uint32_t p = 0;
  std::uint32_t r = 0;
  std::string instance;
  std::function<std::vector<Row>()> run;
};

/// Runs tasks on `jobs` threads; rows come back in task order. Budget refusals
/// become skip rows and any other exception becomes a failed row.
inline std::vector<Row> run_tasks(const std::vector<Task>& tasks, unsigned jobs) {
  std::vector<std::vector<Row>> results(tasks.size());
  auto execute = [&](std::size_t i) {
    const Task& t = tasks[i];
    auto error_row = [&](Verdict v, std::string note) {
      Row row;
      row.suite = t.suite;
      row.p = t.p;
      row.r = t.r;
      row.instance = t.instance;
      row.verdict = v;
      row.note = std::move(note);
      results[i] = {row};
    };
    try {
      results[i] = t.run();
    } catch (const BudgetExceeded& e) {
      error_row(Verdict::skip_hypothesis, std::string("budget: ") + e.what());
    } catch (const HypothesisNotMet& e) {
      error_row(Verdict::skip_hypothesis, std::string("hypothesis not met: ") + e.what());
    } catch (const std::exception& e) {
      error_row(Verdict::fail, std::string("error: ") + e.what());
    }
  };
  if (jobs <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) execute(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(jobs, tasks.size()); ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) execute(i);
      });
  }
  std::vector<Row> rows;
  for (auto& part : results)
    for (auto& row : part) rows.push_back(std::move(row));
  return rows;
}

namespace detail {

inline Row make_row(std::string suite, const Field& f, std::string instance) {
  Row row;
  row.suite = std::move(suite);
  row.p = f.p();
  row.r = f.r();
  row.instance = std::move(instance);
  return row;
}

inline Row bound_row(std::string suite, const Field& f, const DigitBox& box, const BoundReport& rep, std::string extra = {}) {
  Row row = make_row(std::move(suite), f, "D=" + box.to_string() + (rep.parameters.empty() ? "" : " " + rep.parameters));
  row.lhs = to_string(rep.observed);
  row.rhs = rep.rhs.upper_string();
  row.slack = slack_string(to_interval(rep.observed), rep.rhs);
  row.verdict = rep.holds ? Verdict::pass : Verdict::fail;
  row.note = rep.nontrivial ? "nontrivial" : "trivial";
  if (rep.tight) row.note += "; tight";
  if (!extra.empty()) row.note += "; " + extra;
  return row;
}

inline Row lemma_row(const Field& f, const LemmaReport& rep) {
  Row row = make_row(rep.lemma, f, rep.parameters);
  if (rep.verdict == Verdict::skip_hypothesis) {
    row.verdict = rep.verdict;
    row.note = rep.note;
    return row;
  }
  row.lhs = rep.lhs.is_point() ? rep.lhs_exact : rep.lhs.upper_string();
  row.rhs = rep.rhs.upper_string();
  row.slack = rep.slack();
  row.verdict = rep.verdict;
  row.note = rep.note;
  if (rep.tight) row.note += (row.note.empty() ? "" : "; ") + std::string("tight");
  if (!rep.lhs.is_point() && rep.lhs_exact.size() < 200) row.note += (row.note.empty() ? "" : "; ") + ("exact=" + rep.lhs_exact);
  return row;
}

inline Row skip_row(std::string suite, const Field& f, std::string instance, std::string why) {
  Row row = make_row(std::move(suite), f, std::move(instance));
  row.verdict = Verdict::skip_hypothesis;
  row.note = "hypothesis not met: " + std::move(why);
  return row;
}

/// {0, ..., t-1} uniform box, returning t, or nullopt.
inline std::optional<std::uint32_t> prefix_length(const DigitBox& box) {
  if (!box.uniform()) return std::nullopt;
  const auto v = box.digits(0).values();
  if (v.front() != 0 || v.back() + 1 != v.size()) return std::nullopt;
  return static_cast<std::uint32_t>(v.size());
}

inline std::vector<Elem> random_set(const Field& f, std::uint64_t size, std::mt19937_64& rng) {
  std::vector<std::uint64_t> ranks;
  std::vector<char> used(f.q(), 0);
  while (ranks.size() < size) {
    const auto k = std::uniform_int_distribution<std::uint64_t>(0, f.q() - 1)(rng);
    if (used[k]) continue;
    used[k] = 1;
    ranks.push_back(k);
  }
  std::vector<Elem> out;
  for (auto k : ranks) out.push_back(f.from_rank(k));
  return out;
}

/// Rows for one digit box under one box-based suite.
inline std::vector<Row> run_box_suite(std::string_view suite, const FieldData& fd, const DigitBox& box,
                                      const SweepConfig& cfg) {
  const Field& f = fd.field;
  const std::string inst = "D=" + box.to_string();
  const std::string name(suite);
  const std::uint32_t p = f.p(), r = f.r();
  const bool uniform = box.uniform();
  const auto d = static_cast<std::uint32_t>(box.digits(0).size());

  if (suite == "partition") {
    if (r < 2) return {skip_row(name, f, inst, "partition needs r >= 2")};
    if (!uniform) return {skip_row(name, f, inst, "partition needs a uniform digit set")};
    return {lemma_row(f, partition_check(f, box.digits(0), cfg.budget))};
  }

  // Cheap hypothesis gates before any enumeration.
  if (suite == "thmA" && (!uniform || d < 2 || d + 1 > p))
    return {skip_row(name, f, inst, "need uniform D with 2 <= |D| <= p-1")};
  if ((suite == "thm1" || suite == "thm1-existence") && !uniform) return {skip_row(name, f, inst, "need uniform D")};
  if ((suite == "thm1" || suite == "thm1-existence") && !thm1_hypothesis(p, r))
    return {skip_row(name, f, inst, "2r-1 > sqrt p")};
  if (suite == "thm1-existence" && r < 2) return {skip_row(name, f, inst, "threshold stated for r >= 2")};
  if (suite == "thm2" && (!uniform || r < 2)) return {skip_row(name, f, inst, "need uniform D and r >= 2")};
  std::optional<std::uint32_t> t;
  if (suite == "thmB" || suite == "corC-report") {
    t = prefix_length(box);
    if (!t) return {skip_row(name, f, inst, "need D = {0..t-1}")};
    if (suite == "thmB" && *t + 1 == p) return {skip_row(name, f, inst, "C(p,t) undefined for t = p-1")};
    if (suite == "thmB" && (*t < 2 || *t + 2 > p)) return {skip_row(name, f, inst, "need 2 <= t <= p-2")};
    if (suite == "corC-report" && !(cfg.eps > 0 && cfg.eps <= 0.25)) return {skip_row(name, f, inst, "need 0 < eps <= 1/4")};
    if (suite == "corC-report" && !corC_hypothesis(p, *t, cfg.eps)) return {skip_row(name, f, inst, "t < p^{1/4+eps}")};
  }
  if (suite == "thm1-existence") {
    const Interval thr = thm1_threshold(p, r);
    if (!thr.certainly_le(Interval(d)))
      return {skip_row(name, f, inst, "|D| below threshold " + thr.upper_string(10))};
  }

  const SquareCountReport rep = count_squares(fd.chi, box, cfg.budget);
  const auto size_w = rep.size_W;

  if (suite == "identity") {
    Row row = make_row(name, f, inst);
    const Rational rhs(static_cast<std::int64_t>(rep.size_W) - (rep.zero_in_W ? 1 : 0) + rep.char_sum, 2);
    row.lhs = std::to_string(rep.count_Q);
    row.rhs = to_string(rhs);
    row.slack = "";
    row.verdict = rhs == Rational(static_cast<std::int64_t>(rep.count_Q)) ? Verdict::pass : Verdict::fail;
    row.note = "|W|=" + std::to_string(size_w) + " sum=" + std::to_string(rep.char_sum);
    return {row};
  }
  if (suite == "est1") {
    Row row = make_row(name, f, inst);
    const Rational rhs = Rational(rep.char_sum < 0 ? -rep.char_sum : rep.char_sum, 2) + Rational(1, 2);
    row.lhs = to_string(rep.deviation);
    row.rhs = to_string(rhs);
    row.slack = slack_string(to_interval(rep.deviation), to_interval(rhs));
    row.verdict = rep.deviation <= rhs ? Verdict::pass : Verdict::fail;
    row.note = "|W|=" + std::to_string(size_w);
    return {row};
  }
  if (suite == "thmA") {
    auto b = make_bound_report(BoundName::ThmA, "", thmA_rhs(p, r, d), rep.deviation_Q0, size_w);
    return {bound_row(name, f, box, b, thmA_nontrivial_heuristic(p, d) ? "heuristic-nontrivial" : "")};
  }
  if (suite == "thmB") {
    auto b = make_bound_report(BoundName::ThmB, "", thmB_rhs(p, r, *t), rep.deviation_Q0, size_w);
    return {bound_row(name, f, box, b)};
  }
  if (suite == "thm1") {
    auto b = make_bound_report(BoundName::Thm1, "", thm1_rhs(p, r, d), rep.deviation, size_w);
    return {bound_row(name, f, box, b)};
  }
  if (suite == "thm1-existence") {
    Row row = make_row(name, f, inst);
    row.lhs = std::to_string(rep.count_Q);
    row.rhs = "1";
    row.verdict = rep.count_Q >= 1 ? Verdict::pass : Verdict::fail;
    row.note = "threshold=" + thm1_threshold(p, r).upper_string(10);
    return {row};
  }
  if (suite == "thm2") {
    std::vector<Row> rows;
    for (std::uint32_t k = 1; k < r; ++k)
      for (std::uint32_t nu = 1; nu <= cfg.nu_max; ++nu) {
        auto b = make_bound_report(BoundName::Thm2, "k=" + std::to_string(k) + " nu=" + std::to_string(nu),
                                   thm2_rhs(p, r, d, k, nu), rep.deviation, size_w);
        rows.push_back(bound_row(name, f, box, b));
      }
    return rows;
  }
  if (suite == "corC-report") {
    auto b = make_bound_report(BoundName::CorC, "", corC_rhs(p, r, *t, cfg.eps, cfg.user_constant), rep.deviation, size_w);
    Row row = bound_row(name, f, box, b);
    row.verdict = Verdict::report_only;
    row.note += "; user constant";
    return {row};
  }
  throw DomainError("unknown box suite");
}

}  // namespace detail

inline bool is_box_suite(std::string_view s) {
  return s == "identity" || s == "est1" || s == "thmA" || s == "thmB" || s == "thm1" || s == "thm1-existence" ||
         s == "thm2" || s == "partition" || s == "corC-report";
}

/// Expands one suite over the configured fields into tasks.
inline std::vector<Task> plan_suite(std::string_view suite, const SweepConfig& cfg,
                                    const std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const FieldData>>& fields) {
  if (!is_known_suite(suite)) throw ParseError("unknown suite '" + std::string(suite) + "'");
  std::vector<Task> tasks;
  const std::string name(suite);
  auto needs_seed = [&] {
    if (!cfg.seed) throw ParseError("suite '" + name + "' draws random instances and needs a seed");
    return *cfg.seed;
  };

  for (const auto& [p, r] : cfg.fields) {
    const auto fd = fields.at({p, r});
    const Field& f = fd->field;

    if (is_box_suite(suite)) {
      const auto specs = cfg.digits.empty() ? default_digit_specs(suite) : cfg.digits;
      for (std::size_t si = 0; si < specs.size(); ++si) {
        for (auto& box : expand_digit_spec(specs[si], p, r, cfg.seed, si, cfg.budget)) {
          auto b = std::make_shared<const DigitBox>(std::move(box));
          tasks.push_back({name, p, r, "D=" + b->to_string(),
                           [=, &cfg] { return detail::run_box_suite(name, *fd, *b, cfg); }});
        }
      }
    } else if (suite == "lemmaD") {
      std::vector<Elem> gens;
      for (std::uint64_t k = 0; k < f.q(); ++k)
        if (const Elem e = f.from_rank(k); f.is_generator(e)) gens.push_back(e);
      check_budget(saturating_mul(gens.size(), gens.size()), cfg.budget, "lemmaD pairs");
      for (auto s : cfg.orders) {
        if (s < 2 || (f.q() - 1) % s != 0) continue;
        auto chi = std::make_shared<const MultChar>(make_char(f, s, 1));
        auto shared_gens = std::make_shared<const std::vector<Elem>>(gens);
        for (std::size_t a = 0; a < gens.size(); ++a) {
          tasks.push_back({name, p, r, "s=" + std::to_string(s) + " alpha=" + f.to_string(gens[a]), [=] {
                             std::vector<Row> rows;
                             const Elem& alpha = (*shared_gens)[a];
                             for (const Elem& beta : *shared_gens) {
                               if (f.are_conjugate(alpha, beta)) continue;
                               rows.push_back(detail::lemma_row(f, lemmaD_check(*chi, alpha, beta)));
                             }
                             return rows;
                           }});
        }
      }
    } else if (suite == "lemmaE") {
      const std::uint64_t seed = detail::mix_seed(needs_seed(), p, r, 0xE);
      tasks.push_back({name, p, r, "random", [=, &cfg] {
                         std::mt19937_64 rng(seed);
                         std::vector<std::uint64_t> divs;
                         for (std::uint64_t s = 1; s <= f.q() - 1; ++s)
                           if ((f.q() - 1) % s == 0) divs.push_back(s);
                         std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<MultChar>> cache;
                         auto character = [&](std::uint64_t s, std::uint64_t j) {
                           auto& slot = cache[{s, j}];
                           if (!slot) slot = std::make_shared<MultChar>(make_char(f, s, j));
                           return *slot;
                         };
                         std::vector<Row> rows;
                         for (std::uint64_t i = 0; i < cfg.instances; ++i) {
                           const auto t = std::uniform_int_distribution<std::uint64_t>(1, std::min<std::uint64_t>(4, f.q() - 1))(rng);
                           std::vector<MultChar> chars;
                           bool nonprincipal = false;
                           while (!nonprincipal) {
                             chars.clear();
                             for (std::uint64_t c = 0; c < t; ++c) {
                               const auto s = divs[std::uniform_int_distribution<std::size_t>(0, divs.size() - 1)(rng)];
                               const auto j = std::uniform_int_distribution<std::uint64_t>(0, s - 1)(rng);
                               chars.push_back(character(s, j));
                               nonprincipal = nonprincipal || j != 0;
                             }
                           }
                           const auto shifts = detail::random_set(f, t, rng);
                           rows.push_back(detail::lemma_row(f, lemmaE_check(chars, shifts)));
                         }
                         return rows;
                       }});
    } else if (suite == "lemma1") {
      const std::uint64_t seed = detail::mix_seed(needs_seed(), p, r, 0x1);
      tasks.push_back({name, p, r, "random", [=, &cfg] {
                         std::mt19937_64 rng(seed);
                         const std::uint64_t cap = std::min<std::uint64_t>(f.q(), 64);
                         std::vector<Row> rows;
                         for (std::uint64_t i = 0; i < cfg.instances; ++i) {
                           const auto U = detail::random_set(f, std::uniform_int_distribution<std::uint64_t>(1, cap)(rng), rng);
                           const auto V = detail::random_set(f, std::uniform_int_distribution<std::uint64_t>(1, cap)(rng), rng);
                           for (auto nu : cfg.nu) rows.push_back(detail::lemma_row(f, lemma1_check(fd->chi, U, V, nu)));
                         }
                         return rows;
                       }});
    } else if (suite == "energy") {
      std::uint32_t hmax = 1;
      while (std::uint64_t{hmax + 1} * (hmax + 1) <= p) ++hmax;
      for (std::uint32_t h = 1; h <= hmax; ++h) {
        tasks.push_back({name, p, r, "H=" + std::to_string(h), [=, &cfg] {
                           std::vector<Row> rows;
                           long double worst = 0, total = 0;
                           std::uint64_t count = 0;
                           std::vector<std::uint64_t> idx(r, 0);
                           while (true) {
                             std::vector<std::int64_t> n(idx.begin(), idx.end());
                             const auto box = IntervalBox::cube(p, n, h);
                             const EnergyReport rep = energy_count(f, box, cfg.budget);
                             Row row = detail::make_row("energy", f, rep.box);
                             row.lhs = std::to_string(rep.energy);
                             row.rhs = std::to_string(rep.trivial_lower);
                             row.verdict = rep.verdict;
                             char buf[64];
                             std::snprintf(buf, sizeof buf, "ratio=%.6Lg", rep.ratio);
                             row.note = std::string(buf) + (rep.within_hypothesis ? "" : "; outside lemma hypothesis");
                             rows.push_back(std::move(row));
                             worst = std::max(worst, rep.ratio);
                             total += rep.ratio;
                             ++count;
                             std::uint32_t i = r;
                             while (i-- > 0) {
                               if (++idx[i] < p) break;
                               idx[i] = 0;
                             }
                             if (i == static_cast<std::uint32_t>(-1)) break;
                           }
                           Row summary = detail::make_row("energy-ratio", f, "H=" + std::to_string(h));
                           char buf[96];
                           std::snprintf(buf, sizeof buf, "%.6Lg", worst);
                           summary.lhs = buf;
                           std::snprintf(buf, sizeof buf, "boxes=%llu mean=%.6Lg", static_cast<unsigned long long>(count),
                                         total / count);
                           summary.note = buf;
                           summary.verdict = Verdict::report_only;
                           rows.push_back(std::move(summary));
                           return rows;
                         }});
      }
    } else if (suite == "deltaH") {
      for (auto s : cfg.orders) {
        if (s < 2 || (f.q() - 1) % s != 0) continue;
        for (auto h : cfg.H) {
          if (h < 1 || 2ull * h > p) continue;
          tasks.push_back({name, p, r, "s=" + std::to_string(s) + " H=" + std::to_string(h), [=, &cfg] {
                             const auto chi = make_char(f, s, 1);
                             const DeltaResult res = delta_H(chi, h, cfg.budget);
                             Row row = detail::make_row("deltaH", f, "s=" + std::to_string(s) + " H=" + std::to_string(h));
                             row.lhs = res.value.upper_string();
                             row.rhs = "1";
                             row.slack = slack_string(res.value, Interval(1));
                             row.verdict = res.value.certainly_gt(Interval(1)) ? Verdict::fail : Verdict::pass;
                             row.note = "argmax " + res.argmax->to_string() + " sum=" + res.best_sum.to_string() +
                                        " boxes=" + std::to_string(res.boxes);
                             return std::vector<Row>{row};
                           }});
        }
      }
    }
  }
  return tasks;
}

/// Builds every configured field once and runs the requested suites in order.
inline std::vector<Row> run_sweep(const SweepConfig& cfg) {
  if (cfg.suites.empty()) throw ParseError("no suite requested");
  if (cfg.fields.empty()) throw ParseError("no fields configured (set p and r, or fields)");
  for (const auto& s : cfg.suites)
    if (!is_known_suite(s)) throw ParseError("unknown suite '" + s + "'");
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const FieldData>> fields;
  for (const auto& key : cfg.fields)
    if (!fields.count(key)) fields.emplace(key, std::make_shared<const FieldData>(make_field(key.first, key.second)));
  std::vector<Task> tasks;
  for (const auto& s : cfg.suites) {
    auto more = plan_suite(s, cfg, fields);
    std::move(more.begin(), more.end(), std::back_inserter(tasks));
  }
  return run_tasks(tasks, cfg.jobs);
}

inline std::vector<Row> run_suite(std::string_view suite, SweepConfig cfg) {
  cfg.suites = {std::string(suite)};
  return run_sweep(cfg);
}

}  // namespace sqfield
