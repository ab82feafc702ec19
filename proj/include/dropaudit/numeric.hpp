#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace dropaudit {

// Exact integers for Stirling/Triangle tables and derivative-polynomial
// coefficients. These overflow 64 bits near n ~ 25, so arbitrary precision
// is not optional.
using BigInt = boost::multiprecision::cpp_int;

// Two working precisions for cancellation-prone evaluations. Float100
// (~332 significand bits) is the default tier; Float300 is the escalation
// tier used when alternating sums at p close to 1 eat more than ~90 digits
// of headroom (orders beyond ~60 at large |z|).
using Float100 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>>;
using Float300 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<300>>;

// Thrown when even the top precision tier cannot certify the requested
// value against cancellation (bound > |value| * 1e-3).
class PrecisionExhausted : public std::runtime_error {
 public:
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dropaudit
