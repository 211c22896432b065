#pragma once

#include "gmdist/models.hpp"
#include "gmdist/rational.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gmdist {

/// Existential constants of the distance estimates, as explicit parameters.
struct GeometryParams {
  Rational L = 1;    // quasi-isometry / bilipschitz constant
  Rational Lp = 1;   // Seifert-crossing constant L'
  Rational rho = 1;  // minimum distance between JSJ planes
  Rational eta = 0;  // longest connector lift
  Rational R = 1;    // length of the first crossed curve's lift
  Rational r = 1;    // minimum curve length in the surface

  bool operator==(const GeometryParams&) const = default;
};

struct ProbeSection {
  std::optional<Integer> mu;
  std::optional<std::size_t> nmax;
  std::optional<std::size_t> periods;
  std::optional<std::string> cycle;  // "c1,-c2"

  bool operator==(const ProbeSection&) const = default;
};

struct Instance {
  GraphManifold manifold;
  HorizontalSurface surface;
  std::optional<GeometryParams> params;
  std::optional<ProbeSection> probe;

  bool operator==(const Instance&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict parse of the instance format (see README). Unknown sections, keys,
/// statements, duplicates and malformed values are ParseErrors.
Instance parse_instance(std::string_view text, std::string_view source = "<input>");

/// Throws IoError if the file cannot be read, ParseError on bad content.
Instance load_instance(const std::filesystem::path& path);

/// Canonical text form; parse_instance(serialize(x)) == x for parsed x.
std::string serialize(const Instance& inst);

/// "L,Lp,rho,eta,R,r" (six rationals). Throws std::invalid_argument.
GeometryParams parse_params_list(std::string_view text);

}  // namespace gmdist
