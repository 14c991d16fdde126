#pragma once

#include <cstdint>

#include "junta_lab/report.hpp"

namespace junta_lab {

/// Majority-of-parities with budget R = (n-1)k: splitting the budget
/// evenly has error exactly 1/2, while a lopsided allocation gets within
/// 2/sqrt(k). Requires odd k and n >= k.
ExperimentReport counterexample_majority_parity(int k, int n);

/// A biased random inner function whose best small juntas are all the
/// constant +1, so composing with AND drives the composed-form error to
/// 1 - q^k. Runs the exact ideal-q analysis for k = 1..10 and a sampled
/// instance at the given arity; rejection-samples until the positivity
/// conditions hold or the retry cap is hit.
ExperimentReport counterexample_random_and(int n, int k, std::uint64_t seed);

/// The fixed two-block AND instance over the probability table
/// {3/5, 3/4, 3/4, 1} on which no composed-form approximator attains the
/// optimal 4-junta error: exhausts all 4096 composed candidates and
/// reports the strictly positive gap.
ExperimentReport counterexample_noncomposed();

}  // namespace junta_lab
