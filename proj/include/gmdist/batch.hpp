#pragma once

// Batch kernels over independent instances. Each kernel has an OpenMP version
// and a serial reference with identical results; tests compare the two and
// bench/ times them.

#include "gmdist/dilation.hpp"
#include "gmdist/geometry.hpp"
#include "gmdist/spiral.hpp"

#include <span>
#include <vector>

namespace gmdist::batch {

struct SequenceJob {
  SlopeCycle slopes;  // normalized (w >= 1)
  Integer mu = 1;
  std::size_t periods = 1;
};

struct SequenceOutcome {
  bool certified = false;    // verify_sequence passed
  std::size_t checks = 0;
  bool gaps_ok = false;      // every corner gap <= eta + A
  bool linear_ok = false;    // chain <= linear bound, linear bound has constant differences
  Integer f_last;            // f(periods)

  bool operator==(const SequenceOutcome&) const = default;
};

SequenceOutcome certify_sequence(const SequenceJob& job, const Rational& eta, const Rational& R);

std::vector<SequenceOutcome> certify_sequences(std::span<const SequenceJob> jobs, const Rational& eta,
                                               const Rational& R);
std::vector<SequenceOutcome> certify_sequences_serial(std::span<const SequenceJob> jobs, const Rational& eta,
                                                      const Rational& R);

std::vector<DistortionClass> classify(std::span<const HorizontalSurface> surfaces);
std::vector<DistortionClass> classify_serial(std::span<const HorizontalSurface> surfaces);

struct EnvelopeJob {
  HorizontalSurface surface;
  Walk path;
  std::vector<Rational> legs;
  Rational L = 1;
  Rational rho = 1;
};

struct EnvelopeOutcome {
  bool balanced = false;
  EnvelopeCheck check;
  Rational max_d_right;

  bool operator==(const EnvelopeOutcome& o) const {
    return balanced == o.balanced && check.recursion_ok == o.check.recursion_ok &&
           check.claim2_ok == o.check.claim2_ok && check.claim3_ok == o.check.claim3_ok &&
           check.sum_ok == o.check.sum_ok && max_d_right == o.max_d_right;
  }
};

std::vector<EnvelopeOutcome> certify_envelopes(std::span<const EnvelopeJob> jobs);
std::vector<EnvelopeOutcome> certify_envelopes_serial(std::span<const EnvelopeJob> jobs);

/// Number of OpenMP threads the parallel kernels will use.
int thread_count();

}  // namespace gmdist::batch
