#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace spdc {

enum class StackKind { periodic, random, chirped };

std::string_view to_string(StackKind kind);
StackKind stack_kind_from_string(std::string_view name);

/// Parameters a stack was generated from.
struct StackProvenance {
  double sigma = 0.0;     // m, random stacks: parameter of exp(-dl^2/sigma^2)
  double zeta = 0.0;      // m^-2, chirped stacks
  double delta_k0 = 0.0;  // rad/m, chirped stacks (zeta' = zeta / delta_k0)
  std::uint64_t seed = 0;
  std::size_t rejections = 0;  // redrawn non-positive domain lengths

  friend bool operator==(const StackProvenance&, const StackProvenance&) = default;
};

/// Boundary positions z_0 = 0 < z_1 < ... < z_N of a poled crystal with N
/// domains. Domain n (1-based) spans [z_{n-1}, z_n] and carries the sign
/// (-1)^(n-1) of chi(2). Immutable once built; the constructor enforces the
/// invariants.
class DomainStack {
 public:
  DomainStack(std::vector<double> boundaries, double base_length, StackKind kind, StackProvenance provenance);

  std::span<const double> boundaries() const { return boundaries_; }
  std::size_t domain_count() const { return boundaries_.size() - 1; }
  double base_length() const { return base_length_; }
  double length() const { return boundaries_.back(); }
  StackKind kind() const { return kind_; }
  const StackProvenance& provenance() const { return provenance_; }

  friend bool operator==(const DomainStack&, const DomainStack&) = default;

 private:
  std::vector<double> boundaries_;
  double base_length_;
  StackKind kind_;
  StackProvenance provenance_;
};

/// z_n = n l0.
DomainStack build_periodic(std::size_t n_domains, double l0);

/// z_n = z_{n-1} + l0 + dl_n, dl_n drawn independently from the density
/// exp(-dl^2/sigma^2)/(sqrt(pi) sigma), i.e. normal with standard deviation
/// sigma/sqrt(2). Draws giving l0 + dl_n <= 0 are redrawn and counted in the
/// provenance. sigma = 0 reproduces build_periodic exactly.
DomainStack build_random(std::size_t n_domains, double l0, double sigma, std::uint64_t seed);

/// z_n = n l0 + zeta' (n - N/2)^2 l0^2 with zeta' = zeta / delta_k0, shifted
/// rigidly so that z_0 = 0. Throws ArgumentError naming the first index at
/// which the boundaries stop increasing.
DomainStack build_chirped(std::size_t n_domains, double l0, double zeta, double delta_k0);

/// Plain-text form: '#'-prefixed header lines (kind, domains, base_length_m,
/// sigma_m, zeta_per_m2, delta_k0_per_m, seed, rejections), then one boundary
/// position in metres per line, printed with round-trip precision.
void write_stack(std::ostream& out, const DomainStack& stack);
DomainStack read_stack(std::istream& in);

}  // namespace spdc
