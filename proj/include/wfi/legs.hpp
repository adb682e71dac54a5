#pragma once

#include "fn.hpp"
#include "rational.hpp"
#include "rearrange.hpp"
#include "step_function.hpp"

namespace wfi {

// x -> ||h||_{L^s(0, x)}
inline Fn head_norm(const StepFunction& h, const Exponent& s) {
  if (s.is_infinite()) return head_sup(h.to_fn());
  return pow(pow_compose(h, s.value(), ZeroPolicy::ToInfinity).antiderivative_fn(), s.inv());
}

inline ExtReal full_norm(const StepFunction& h, const Exponent& s) {
  if (s.is_infinite()) return ess_sup(h);
  return pow(integrate(pow_compose(h, s.value(), ZeroPolicy::ToInfinity), 0.0, detail::kInf), s.inv().to_double());
}

inline StepFunction recip(const StepFunction& f) { return pow_compose(f, Rational(-1), ZeroPolicy::ToInfinity); }

// x -> ||h||_{L^s(x, inf)}
inline Fn tail_norm(const StepFunction& h, const Exponent& s) {
  if (s.is_infinite()) return tail_sup(h.to_fn());
  return pow(pow_compose(h, s.value(), ZeroPolicy::ToInfinity).tail_integral_fn(), s.inv());
}

}  // namespace wfi
