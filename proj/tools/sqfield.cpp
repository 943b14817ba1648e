// sqfield: command-line runner for square counts and verification sweeps.
//
// Exit status: 0 when no row failed, 1 on a failed check or instance error,
// 2 on usage, config, or parse errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sqfield/sqfield.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string config;
  std::string p, r, digits, suite, budget, seed, jobs, out, format, constant;
  std::string eps, H, orders, nu_max, nu, instances, samples, fields;
  bool elements = false;
};

struct Bound {
  const char* key;
  const char* flag;
  std::string Flags::*member;
  const char* help;
};

const Bound kFlags[] = {
    {"p", "--p", &Flags::p, "primes, comma separated"},
    {"r", "--r", &Flags::r, "extension degrees, comma separated"},
    {"fields", "--fields", &Flags::fields, "explicit p:r pairs, comma separated"},
    {"digits", "--digits", &Flags::digits, "digit specs separated by ';'"},
    {"suite", "--suite", &Flags::suite, "suites, comma separated"},
    {"budget", "--budget", &Flags::budget, "enumeration budget (default $SQFIELD_BUDGET or 1e8)"},
    {"seed", "--seed", &Flags::seed, "seed for random instances"},
    {"jobs", "--jobs", &Flags::jobs, "worker threads"},
    {"out", "--out", &Flags::out, "output path (default stdout)"},
    {"format", "--format", &Flags::format, "csv or json"},
    {"const", "--const", &Flags::constant, "user constant for corC-report"},
    {"eps", "--eps", &Flags::eps, "epsilon for corC-report"},
    {"H", "--H", &Flags::H, "box sizes for deltaH"},
    {"orders", "--s", &Flags::orders, "character orders for lemmaD and deltaH"},
    {"nu_max", "--nu-max", &Flags::nu_max, "largest nu in the thm2 grid"},
    {"nu", "--nu", &Flags::nu, "nu values for lemma1"},
    {"instances", "--instances", &Flags::instances, "random instances per field (lemmaE, lemma1)"},
    {"samples", "--samples", &Flags::samples, "Monte-Carlo sample count"},
};

void add_flags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "key=value config file; flags override it");
  for (const auto& b : kFlags) cmd->add_option(b.flag, flags.*(b.member), b.help);
}

sqfield::SweepConfig build_config(const CLI::App* cmd, const Flags& flags) {
  sqfield::SweepConfig cfg;
  if (const char* env = std::getenv("SQFIELD_BUDGET"); env && *env) {
    try {
      sqfield::apply_setting(cfg, "budget", env);
    } catch (const sqfield::ParseError& e) {
      throw sqfield::ParseError(std::string("SQFIELD_BUDGET: ") + e.what());
    }
  }
  if (!flags.config.empty()) {
    std::ifstream in(flags.config);
    if (!in) throw sqfield::ParseError("cannot read config file '" + flags.config + "'");
    std::stringstream text;
    text << in.rdbuf();
    try {
      cfg = sqfield::parse_config(text.str(), cfg);
    } catch (const sqfield::ParseError& e) {
      throw sqfield::ParseError(flags.config + ":" + e.what());
    }
  }
  for (const auto& b : kFlags) {
    if (cmd->count(b.flag) == 0) continue;
    try {
      sqfield::apply_setting(cfg, b.key, flags.*(b.member));
    } catch (const sqfield::ParseError& e) {
      throw sqfield::ParseError(std::string(b.flag) + ": " + e.what());
    }
  }
  return cfg;
}

std::pair<std::uint32_t, std::uint32_t> single_field(const sqfield::SweepConfig& cfg) {
  if (cfg.fields.size() != 1) throw sqfield::ParseError("expected exactly one field (one --p and one --r)");
  return cfg.fields.front();
}

template <typename Fn>
void with_output(const sqfield::SweepConfig& cfg, Fn&& fn) {
  if (cfg.out.empty()) {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw sqfield::Error("cannot write '" + cfg.out + "'");
  fn(os);
}

std::vector<sqfield::DigitBox> digit_boxes(const sqfield::SweepConfig& cfg, std::uint32_t p, std::uint32_t r) {
  if (cfg.digits.empty()) throw sqfield::ParseError("--digits is required");
  std::vector<sqfield::DigitBox> boxes;
  for (std::size_t i = 0; i < cfg.digits.size(); ++i)
    for (auto& b : sqfield::expand_digit_spec(cfg.digits[i], p, r, cfg.seed, i, cfg.budget)) boxes.push_back(std::move(b));
  return boxes;
}

int cmd_field(const sqfield::SweepConfig& cfg, bool elements) {
  const auto [p, r] = single_field(cfg);
  const sqfield::Field f = sqfield::make_field(p, r);
  const sqfield::QuadraticCharacter chi(f);
  std::string generator = "(not tabulated)";
  if (f.q() - 1 <= sqfield::kDefaultDlogCap && f.q() > 2) {
    const auto g = sqfield::make_char(f, f.q() - 1, 1).generator();
    if (g) generator = f.to_string(*g);
  }
  with_output(cfg, [&](std::ostream& os) {
    if (cfg.format == "json") {
      nlohmann::ordered_json j = {{"p", p},
                                  {"r", r},
                                  {"q", f.q()},
                                  {"modulus", f.modulus_string()},
                                  {"generator", generator},
                                  {"squares", (f.q() - 1) / 2}};
      if (elements) {
        j["elements"] = nlohmann::ordered_json::array();
        for (std::uint64_t k = 0; k < f.q(); ++k) {
          const auto x = f.from_rank(k);
          j["elements"].push_back({{"rank", k}, {"element", f.to_string(x)}, {"chi", chi(x)}, {"degree", f.degree(x)}});
        }
      }
      os << j.dump(2) << '\n';
      return;
    }
    os << "p = " << p << "\nr = " << r << "\nq = " << f.q() << "\nmodulus = " << f.modulus_string()
       << "\ngenerator = " << generator << "\nsquares = " << (f.q() - 1) / 2 << '\n';
    if (elements) {
      os << "rank,element,chi,degree\n";
      for (std::uint64_t k = 0; k < f.q(); ++k) {
        const auto x = f.from_rank(k);
        os << k << ',' << f.to_string(x) << ',' << chi(x) << ',' << f.degree(x) << '\n';
      }
    }
  });
  return 0;
}

int cmd_count(const sqfield::SweepConfig& cfg) {
  const auto [p, r] = single_field(cfg);
  const sqfield::QuadraticCharacter chi(sqfield::make_field(p, r));
  const auto boxes = digit_boxes(cfg, p, r);
  std::vector<sqfield::SquareCountReport> reports;
  for (const auto& box : boxes) reports.push_back(sqfield::count_squares(chi, box, cfg.budget, cfg.jobs));
  with_output(cfg, [&](std::ostream& os) {
    if (cfg.format == "json") {
      auto j = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < boxes.size(); ++i) {
        const auto& c = reports[i];
        j.push_back({{"p", p},
                     {"r", r},
                     {"digits", boxes[i].to_string()},
                     {"size_W", c.size_W},
                     {"count_Q", c.count_Q},
                     {"count_Q0", c.count_Q0},
                     {"count_nonsquares", c.count_nonsquares},
                     {"char_sum", c.char_sum},
                     {"deviation", sqfield::to_string(c.deviation)}});
      }
      os << j.dump(2) << '\n';
      return;
    }
    os << "p,r,digits,size_W,count_Q,count_Q0,count_nonsquares,char_sum,deviation\n";
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const auto& c = reports[i];
      os << p << ',' << r << ',' << sqfield::detail::csv_field(boxes[i].to_string()) << ',' << c.size_W << ','
         << c.count_Q << ',' << c.count_Q0 << ',' << c.count_nonsquares << ',' << c.char_sum << ','
         << sqfield::to_string(c.deviation) << '\n';
    }
  });
  return 0;
}

int cmd_estimate(const sqfield::SweepConfig& cfg) {
  const auto [p, r] = single_field(cfg);
  if (!cfg.seed) throw sqfield::ParseError("estimate needs --seed");
  const sqfield::QuadraticCharacter chi(sqfield::make_field(p, r));
  const auto boxes = digit_boxes(cfg, p, r);
  with_output(cfg, [&](std::ostream& os) {
    auto j = nlohmann::ordered_json::array();
    if (cfg.format != "json") os << "p,r,digits,samples,hits,estimate,ci_low,ci_high,caveat\n";
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const auto e = sqfield::estimate_square_fraction(chi, boxes[i], cfg.samples, *cfg.seed + i);
      if (cfg.format == "json") {
        j.push_back({{"p", p},
                     {"r", r},
                     {"digits", boxes[i].to_string()},
                     {"samples", e.samples},
                     {"hits", e.hits},
                     {"estimate", e.estimate},
                     {"ci_low", e.ci_low},
                     {"ci_high", e.ci_high},
                     {"caveat", e.caveat}});
        continue;
      }
      char buf[160];
      std::snprintf(buf, sizeof buf, "%llu,%llu,%.6f,%.6f,%.6f,%s", static_cast<unsigned long long>(e.samples),
                    static_cast<unsigned long long>(e.hits), e.estimate, e.ci_low, e.ci_high,
                    e.caveat ? "small-count" : "");
      os << p << ',' << r << ',' << sqfield::detail::csv_field(boxes[i].to_string()) << ',' << buf << '\n';
    }
    if (cfg.format == "json") os << j.dump(2) << '\n';
  });
  return 0;
}

int cmd_verify(const sqfield::SweepConfig& cfg) {
  const auto rows = sqfield::run_sweep(cfg);
  with_output(cfg, [&](std::ostream& os) {
    if (cfg.format == "json")
      sqfield::write_json(os, rows);
    else
      sqfield::write_csv(os, rows);
  });
  const auto summary = sqfield::summarize(rows);
  std::cerr << sqfield::summary_line(summary) << '\n';
  return summary.failed == 0 ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squares in digit-restricted subsets of finite fields"};
  app.require_subcommand(1);
  Flags flags;

  auto* field = app.add_subcommand("field", "describe F_{p^r}");
  auto* count = app.add_subcommand("count", "exact square counts for digit boxes");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  auto* sweep = app.add_subcommand("sweep", "run suites from a config file");
  auto* estimate = app.add_subcommand("estimate", "Monte-Carlo square fraction");
  for (auto* cmd : {field, count, verify, sweep, estimate}) add_flags(cmd, flags);
  field->add_flag("--elements", flags.elements, "list every element");
  sweep->add_option("config_file", flags.config, "config file")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    const auto cfg = build_config(cmd, flags);
    if (cmd == field) return cmd_field(cfg, flags.elements);
    if (cmd == count) return cmd_count(cfg);
    if (cmd == estimate) return cmd_estimate(cfg);
    if (cmd == verify && cfg.suites.empty()) throw sqfield::ParseError("verify needs --suite");
    return cmd_verify(cfg);
  } catch (const sqfield::ParseError& e) {
    std::cerr << "sqfield: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sqfield::DomainError& e) {
    std::cerr << "sqfield: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sqfield::BudgetExceeded& e) {
    std::cerr << "sqfield: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "sqfield: " << e.what() << '\n';
    return kExitFailure;
  }
}
