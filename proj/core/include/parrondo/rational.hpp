#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace parrondo {

// Exact arithmetic used by the golden-matrix and closed-form checks.
// Header-only backend; plenty fast for the 16-state chains it is used on.
using rational = boost::multiprecision::cpp_rational;

inline double to_double(const rational& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

}  // namespace parrondo
