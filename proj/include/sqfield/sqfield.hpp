#pragma once

#include "sqfield/error.hpp"
#include "sqfield/interval.hpp"
#include "sqfield/field.hpp"
#include "sqfield/characters.hpp"
#include "sqfield/digit_sets.hpp"
#include "sqfield/counting.hpp"
#include "sqfield/bounds.hpp"
#include "sqfield/oracles.hpp"
#include "sqfield/report.hpp"
#include "sqfield/suites.hpp"
