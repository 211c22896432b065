#include "gmdist/batch.hpp"

#include <exception>
#include <omp.h>

namespace gmdist::batch {

namespace {

// Runs fn(i) for every i in parallel; the first exception (by index) is
// rethrown after the loop since exceptions cannot cross the region.
template <typename Out, typename Fn>
std::vector<Out> parallel_map(std::size_t count, Fn fn) {
  std::vector<Out> out(count);
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

template <typename Out, typename Fn>
std::vector<Out> serial_map(std::size_t count, Fn fn) {
  std::vector<Out> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(fn(i));
  return out;
}

EnvelopeOutcome certify_envelope_job(const EnvelopeJob& job) {
  GainGraph g(job.surface);
  auto trace = upper_envelope(g, job.path, job.legs, job.L, job.rho);
  EnvelopeOutcome out;
  out.balanced = trace.Lambda.has_value();
  out.check = certify_envelope(trace);
  out.max_d_right = 0;
  for (const auto& d : trace.d_right) out.max_d_right = std::max(out.max_d_right, d);
  return out;
}

}  // namespace

SequenceOutcome certify_sequence(const SequenceJob& job, const Rational& eta, const Rational& R) {
  SequenceOutcome out;
  const auto seq = build_sequence(job.slopes, job.mu, job.periods);
  const auto cert = verify_sequence(seq);
  out.certified = cert.ok();
  out.checks = cert.checks.size();
  const auto f = partial_sums(seq);
  out.f_last = f.empty() ? Integer(0) : f.back();
  if (!out.certified) return out;

  const auto chain = corner_chain(seq, eta, R);
  out.gaps_ok =
      std::all_of(chain.gaps.begin(), chain.gaps.end(), [&](const Rational& g) { return g <= eta + Rational(seq.A); });
  out.linear_ok = true;
  const Rational step = 2 * Rational(static_cast<unsigned long>(chain.period)) * (eta + Rational(seq.A));
  for (std::size_t n = 1; n <= chain.max_n(); ++n) {
    if (chain.chain_length(n) > chain.linear_bound(n)) out.linear_ok = false;
    if (n > 1 && chain.linear_bound(n) - chain.linear_bound(n - 1) != step) out.linear_ok = false;
  }
  return out;
}

std::vector<SequenceOutcome> certify_sequences(std::span<const SequenceJob> jobs, const Rational& eta,
                                               const Rational& R) {
  return parallel_map<SequenceOutcome>(jobs.size(), [&](std::size_t i) { return certify_sequence(jobs[i], eta, R); });
}

std::vector<SequenceOutcome> certify_sequences_serial(std::span<const SequenceJob> jobs, const Rational& eta,
                                                      const Rational& R) {
  return serial_map<SequenceOutcome>(jobs.size(), [&](std::size_t i) { return certify_sequence(jobs[i], eta, R); });
}

std::vector<DistortionClass> classify(std::span<const HorizontalSurface> surfaces) {
  return parallel_map<DistortionClass>(surfaces.size(), [&](std::size_t i) { return distortion_class(surfaces[i]); });
}

std::vector<DistortionClass> classify_serial(std::span<const HorizontalSurface> surfaces) {
  return serial_map<DistortionClass>(surfaces.size(), [&](std::size_t i) { return distortion_class(surfaces[i]); });
}

std::vector<EnvelopeOutcome> certify_envelopes(std::span<const EnvelopeJob> jobs) {
  return parallel_map<EnvelopeOutcome>(jobs.size(), [&](std::size_t i) { return certify_envelope_job(jobs[i]); });
}

std::vector<EnvelopeOutcome> certify_envelopes_serial(std::span<const EnvelopeJob> jobs) {
  return serial_map<EnvelopeOutcome>(jobs.size(), [&](std::size_t i) { return certify_envelope_job(jobs[i]); });
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace gmdist::batch
