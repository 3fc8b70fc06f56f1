#pragma once

#include "abcu/core.hpp"
#include "abcu/axioms.hpp"
#include "abcu/uncertainty.hpp"
#include "abcu/decide.hpp"
#include "abcu/probability.hpp"
#include "abcu/optimize.hpp"
#include "abcu/reductions.hpp"
#include "abcu/io.hpp"
