#pragma once

#include "gmdist/dilation.hpp"
#include "gmdist/rational.hpp"
#include "gmdist/spiral.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace gmdist {

/// The two affine structures on one JSJ plane. Left-chart coordinates use the
/// basis (left fiber, h) in which the left metric is orthonormal; the columns
/// of `right_basis` express the right chart's basis (right fiber, h') in left
/// coordinates, and the right metric is orthonormal in that basis.
class PlaneCharts {
 public:
  using Matrix = std::array<std::array<std::int64_t, 2>, 2>;
  using Point = std::array<Rational, 2>;

  /// Throws std::invalid_argument unless the matrix is integral unimodular and
  /// the two fibers meet with intersection number +-1.
  explicit PlaneCharts(const Matrix& right_basis);

  static PlaneCharts standard() { return PlaneCharts({{{0, 1}, {1, 0}}}); }

  const Matrix& right_basis() const { return basis_; }
  std::int64_t determinant() const;
  /// Squared left-metric length of the right fiber (kappa^-2 in the usual notation).
  Rational right_fiber_length_sq() const;

  /// Vector of a class p*[left fiber] + q*[right fiber] in left coordinates.
  Point class_vector(std::int64_t p, std::int64_t q) const;

  struct Corner {
    Point y;
    Rational left_distance;   // d_left(y, x), along the left fiber line through x
    Rational right_distance;  // d_right(y, z), along the right fiber line through z
  };
  /// Intersection of the left fiber line through x with the right fiber line
  /// through z, with each leg measured in its own chart.
  Corner corner(const Point& x, const Point& z) const;

 private:
  Matrix basis_;
};

/// Slope rule at a JSJ plane: d_left(y, x) = |a/b| * d_right(y, z).
Rational cross_plane(const PlaneCharts& charts, std::int64_t a, std::int64_t b, const Rational& dist_right);

/// d_in + L' * leg; the certified fiber distance after crossing a Seifert piece.
Rational cross_seifert_bound(const Rational& d_in, const Rational& leg, const Rational& L_prime);

struct CrossingTrace {
  std::vector<Integer> r;      // t(i) a_i, i = 1..N
  std::vector<Integer> s;      // t(i) b_i
  std::vector<Rational> gaps;  // g_j = eta + |t(j+1)a_{j+1} + t(j)b_j|, j = 1..N-1
  Rational eta;
  Rational R;
  Integer A;
  Rational closing;            // 2 eta + R |t(1)|
  std::size_t period = 1;

  /// Doubled corner chain for rho_n: 2 * sum_{j < nm} g_j + closing.
  Rational chain_length(std::size_t n) const;
  /// Same with every gap relaxed to eta + A; affine in n.
  Rational linear_bound(std::size_t n) const;
  std::size_t max_n() const { return (gaps.size() + 1) / period; }
};

/// Throws std::invalid_argument if the sequence fails verification or eta/R < 0.
CrossingTrace corner_chain(const SpiralSequence& seq, const Rational& eta, const Rational& R);

struct EnvelopeTrace {
  std::vector<Rational> d_left;   // d_{j-1}(y_j, x_j), j = 1..k-1
  std::vector<Rational> d_right;  // d_j(y_j, z_j)
  std::vector<Rational> slopes;   // |b_j / a_j| along the path
  std::vector<Rational> legs;     // |xi_{j-1}|
  Rational L;
  Rational rho;
  Rational n;                     // ambient length the path is certified for
  Rational epsilon;
  std::optional<Rational> Lambda; // balanced surfaces only
  std::vector<Rational> claim2;   // L^3 n sum_{i<=j} eps^i
  std::vector<Rational> claim3;   // L^2 sum_{i<=j} |xi_{i-1}| Theta_{i,j}
  std::vector<std::vector<Rational>> theta_table;  // [i-1][j-i]

  std::size_t crossings() const { return d_right.size(); }
  /// Theta_{i,j} = prod_{l=i..j} |b_l/a_l|, 1-based, i <= j.
  Rational theta(std::size_t i, std::size_t j) const;
  Rational sum_d_right() const;
  /// (crossings) * Lambda * L^3 * n when balanced.
  std::optional<Rational> claim3_sum_bound() const;
};

struct EnvelopeCheck {
  bool recursion_ok = true;  // d_right(j) = slope_j * d_left(j), d_left from the previous step
  bool claim2_ok = true;     // d_right(j) <= claim2(j)
  bool claim3_ok = true;     // balanced: d_right(j) <= claim3(j) <= Lambda L^3 n, Theta <= Lambda
  bool sum_ok = true;        // balanced: sum d_right <= crossings * Lambda L^3 n
  bool ok() const { return recursion_ok && claim2_ok && claim3_ok && sum_ok; }
};

/// Runs the distance recursion along `path` from d_0 = 0: the leg bound
/// (cross_seifert_bound with L^2) then the slope rule at each crossing.
/// legs[j-1] is the Seifert leg before crossing j. When `declared_n` is given
/// it must satisfy crossings+1 <= n/rho and sum(legs) <= L n (else
/// std::invalid_argument); otherwise n is taken as sum(legs)/L. Throws
/// WalkError if the path is not a walk of g.
EnvelopeTrace upper_envelope(const GainGraph& g, const Walk& path, const std::vector<Rational>& legs,
                             const Rational& L, const Rational& rho,
                             const std::optional<Rational>& declared_n = std::nullopt);

EnvelopeCheck certify_envelope(const EnvelopeTrace& trace);

}  // namespace gmdist
