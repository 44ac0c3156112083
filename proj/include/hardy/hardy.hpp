#pragma once

#include "hardy/analysis.hpp"
#include "hardy/bohr.hpp"
#include "hardy/coeff.hpp"
#include "hardy/evaluator.hpp"
#include "hardy/gallery.hpp"
#include "hardy/multi_index.hpp"
#include "hardy/norms.hpp"
#include "hardy/parallel.hpp"
#include "hardy/partial_sums.hpp"
#include "hardy/poisson.hpp"
#include "hardy/poly.hpp"
#include "hardy/primes.hpp"
#include "hardy/sampling.hpp"
#include "hardy/translations.hpp"
