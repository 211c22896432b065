#include "gmdist/geometry.hpp"

#include <numeric>
#include <stdexcept>

namespace gmdist {

PlaneCharts::PlaneCharts(const Matrix& right_basis) : basis_(right_basis) {
  const auto det = determinant();
  if (det != 1 && det != -1) throw std::invalid_argument("chart change of basis must have determinant +-1");
  // det[left fiber, right fiber] with left fiber = (1, 0)
  if (basis_[1][0] != 1 && basis_[1][0] != -1) {
    throw std::invalid_argument("fibers of adjacent pieces must have intersection number +-1");
  }
}

std::int64_t PlaneCharts::determinant() const {
  return basis_[0][0] * basis_[1][1] - basis_[0][1] * basis_[1][0];
}

Rational PlaneCharts::right_fiber_length_sq() const {
  return make_rational(basis_[0][0] * basis_[0][0] + basis_[1][0] * basis_[1][0]);
}

PlaneCharts::Point PlaneCharts::class_vector(std::int64_t p, std::int64_t q) const {
  return {make_rational(p) + make_rational(q) * make_rational(basis_[0][0]),
          make_rational(q) * make_rational(basis_[1][0])};
}

PlaneCharts::Corner PlaneCharts::corner(const Point& x, const Point& z) const {
  // x + s e1 = z + u f, with f the right fiber in left coordinates
  const Rational f0 = make_rational(basis_[0][0]);
  const Rational f1 = make_rational(basis_[1][0]);
  const Rational u = -(z[1] - x[1]) / f1;
  const Rational s = (z[0] - x[0]) + u * f0;
  return {{x[0] + s, x[1]}, abs(s), abs(u)};
}

Rational cross_plane(const PlaneCharts& charts, std::int64_t a, std::int64_t b, const Rational& dist_right) {
  (void)charts;  // the rule holds for every admissible chart pair
  if (a == 0 || b == 0) throw std::invalid_argument("cross_plane: zero coefficient");
  if (dist_right < 0) throw std::invalid_argument("cross_plane: negative distance");
  return abs_ratio(a, b) * dist_right;
}

Rational cross_seifert_bound(const Rational& d_in, const Rational& leg, const Rational& L_prime) {
  if (d_in < 0 || leg < 0) throw std::invalid_argument("cross_seifert_bound: negative distance");
  if (L_prime < 1) throw std::invalid_argument("cross_seifert_bound: L' must be >= 1");
  return d_in + L_prime * leg;
}

Rational CrossingTrace::chain_length(std::size_t n) const {
  if (n == 0 || n > max_n()) throw std::out_of_range("chain_length: n out of range");
  Rational one_side = 0;
  for (std::size_t j = 1; j < n * period; ++j) one_side += gaps[j - 1];
  return 2 * one_side + closing;
}

Rational CrossingTrace::linear_bound(std::size_t n) const {
  if (n == 0 || n > max_n()) throw std::out_of_range("linear_bound: n out of range");
  return 2 * Rational(static_cast<unsigned long>(n * period - 1)) * (eta + A) + closing;
}

CrossingTrace corner_chain(const SpiralSequence& seq, const Rational& eta, const Rational& R) {
  if (eta < 0 || R < 0) throw std::invalid_argument("corner_chain: eta and R must be non-negative");
  if (!verify_sequence(seq).ok()) throw std::invalid_argument("corner_chain: sequence is not certified");

  const auto& s = seq.slopes;
  CrossingTrace out;
  out.eta = eta;
  out.R = R;
  out.A = seq.A;
  out.period = s.period();
  for (std::size_t i = 1; i <= seq.length(); ++i) {
    out.r.push_back(seq.t_at(i) * Integer(static_cast<long>(s.a_at(i))));
    out.s.push_back(seq.t_at(i) * Integer(static_cast<long>(s.b_at(i))));
  }
  for (std::size_t j = 1; j < seq.length(); ++j) {
    Rational gap = eta + Rational(Integer(abs(out.r[j] + out.s[j - 1])));
    if (gap > eta + Rational(seq.A)) throw std::logic_error("corner gap exceeds eta + A at j=" + std::to_string(j));
    out.gaps.push_back(std::move(gap));
  }
  out.closing = 2 * eta + R * Rational(Integer(abs(seq.t_at(1))));
  return out;
}

Rational EnvelopeTrace::theta(std::size_t i, std::size_t j) const {
  if (i < 1 || i > j || j > crossings()) throw std::out_of_range("theta index");
  return theta_table[i - 1][j - i];
}

Rational EnvelopeTrace::sum_d_right() const {
  return std::accumulate(d_right.begin(), d_right.end(), Rational(0));
}

std::optional<Rational> EnvelopeTrace::claim3_sum_bound() const {
  if (!Lambda) return std::nullopt;
  return Rational(static_cast<unsigned long>(crossings())) * *Lambda * L * L * L * n;
}

EnvelopeTrace upper_envelope(const GainGraph& g, const Walk& path, const std::vector<Rational>& legs, const Rational& L,
                             const Rational& rho, const std::optional<Rational>& declared_n) {
  g.end_of(path);
  const std::size_t k = path.crossings.size();
  if (legs.empty()) throw std::invalid_argument("upper_envelope: legs must be nonempty");
  if (legs.size() != k) throw std::invalid_argument("upper_envelope: need one leg per crossing");
  if (L < 1) throw std::invalid_argument("upper_envelope: L must be >= 1");
  if (rho <= 0) throw std::invalid_argument("upper_envelope: rho must be positive");

  EnvelopeTrace tr;
  tr.L = L;
  tr.rho = rho;
  tr.legs = legs;
  const Rational leg_sum = std::accumulate(legs.begin(), legs.end(), Rational(0));
  if (declared_n) {
    if (leg_sum > L * *declared_n) throw std::invalid_argument("upper_envelope: legs longer than L*n");
    if (Rational(static_cast<unsigned long>(k + 1)) * rho > *declared_n) {
      throw std::invalid_argument("upper_envelope: crossing count exceeds n/rho");
    }
    tr.n = *declared_n;
  } else {
    tr.n = leg_sum / L;
  }
  tr.epsilon = governor(g);
  tr.Lambda = lambda_bounds(g).exact;

  const Rational L2 = L * L;
  const Rational L3n = L2 * L * tr.n;
  const auto charts = PlaneCharts::standard();
  Rational d = 0;
  Rational eps_power = 1, eps_sum = 0;
  for (std::size_t j = 1; j <= k; ++j) {
    const Crossing x = path.crossings[j - 1];
    auto [a, b] = g.slope(x);
    Rational d_left = cross_seifert_bound(d, legs[j - 1], L2);
    // slope rule solved for the right-hand distance
    d = cross_plane(charts, b, a, d_left);
    tr.d_left.push_back(std::move(d_left));
    tr.d_right.push_back(d);
    tr.slopes.push_back(abs_ratio(b, a));

    eps_power *= tr.epsilon;
    eps_sum += eps_power;
    tr.claim2.push_back(L3n * eps_sum);
  }

  tr.theta_table.resize(k);
  for (std::size_t i = 1; i <= k; ++i) {
    Rational th = tr.slopes[i - 1];
    tr.theta_table[i - 1].push_back(th);
    for (std::size_t j = i + 1; j <= k; ++j) {
      th *= tr.slopes[j - 1];
      tr.theta_table[i - 1].push_back(th);
    }
  }
  for (std::size_t j = 1; j <= k; ++j) {
    Rational sum = 0;
    for (std::size_t i = 1; i <= j; ++i) sum += legs[i - 1] * tr.theta(i, j);
    tr.claim3.push_back(L2 * sum);
  }
  return tr;
}

EnvelopeCheck certify_envelope(const EnvelopeTrace& tr) {
  EnvelopeCheck out;
  const Rational L2 = tr.L * tr.L;
  const Rational L3n = L2 * tr.L * tr.n;
  Rational prev = 0;
  for (std::size_t j = 1; j <= tr.crossings(); ++j) {
    const auto& dl = tr.d_left[j - 1];
    const auto& dr = tr.d_right[j - 1];
    if (dl != prev + L2 * tr.legs[j - 1] || dr != tr.slopes[j - 1] * dl) out.recursion_ok = false;
    if (dr > tr.claim2[j - 1] || tr.legs[j - 1] > tr.L * tr.n || tr.slopes[j - 1] > tr.epsilon) out.claim2_ok = false;
    if (tr.Lambda) {
      if (dr > tr.claim3[j - 1] || tr.claim3[j - 1] > *tr.Lambda * L3n) out.claim3_ok = false;
      for (std::size_t i = 1; i <= j; ++i) {
        if (tr.theta(i, j) > *tr.Lambda) out.claim3_ok = false;
      }
    }
    prev = dr;
  }
  if (auto bound = tr.claim3_sum_bound()) out.sum_ok = tr.sum_d_right() <= *bound;
  return out;
}

}  // namespace gmdist
