#pragma once

// Exact arithmetic foundation: rationals (GMP), parameter polynomials in
// (q, t), the rational-function field Q(q,t), and truncated parameter series.

#include "symqva/errors.hpp"
#include "symqva/scalars/param_poly.hpp"
#include "symqva/scalars/param_series.hpp"
#include "symqva/scalars/poly_gcd.hpp"
#include "symqva/scalars/ratfunc.hpp"
