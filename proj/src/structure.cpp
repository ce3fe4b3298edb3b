#include "spdc/structure.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "spdc/config.hpp"
#include "spdc/errors.hpp"
#include "spdc/rng.hpp"

namespace spdc {
namespace {

void require_shape(std::size_t n_domains, double l0) {
  if (n_domains == 0) throw ArgumentError("a domain stack needs at least one domain");
  if (!(l0 > 0.0) || !std::isfinite(l0)) throw ArgumentError("base domain length must be positive");
}

}  // namespace

std::string_view to_string(StackKind kind) {
  switch (kind) {
    case StackKind::periodic: return "periodic";
    case StackKind::random: return "random";
    case StackKind::chirped: return "chirped";
  }
  return "unknown";
}

StackKind stack_kind_from_string(std::string_view name) {
  if (name == "periodic") return StackKind::periodic;
  if (name == "random") return StackKind::random;
  if (name == "chirped") return StackKind::chirped;
  throw ArgumentError("unknown stack kind '" + std::string(name) + "' (periodic, random, chirped)");
}

DomainStack::DomainStack(std::vector<double> boundaries, double base_length, StackKind kind,
                         StackProvenance provenance)
    : boundaries_(std::move(boundaries)), base_length_(base_length), kind_(kind), provenance_(provenance) {
  if (boundaries_.size() < 2) throw ArgumentError("a domain stack needs at least one domain");
  if (boundaries_.front() != 0.0) throw ArgumentError("first boundary must be at z = 0");
  for (std::size_t n = 1; n < boundaries_.size(); ++n) {
    if (!(boundaries_[n] > boundaries_[n - 1])) {
      throw ArgumentError("boundaries not strictly increasing at index " + std::to_string(n));
    }
  }
}

DomainStack build_periodic(std::size_t n_domains, double l0) {
  require_shape(n_domains, l0);
  std::vector<double> z(n_domains + 1);
  for (std::size_t n = 0; n <= n_domains; ++n) z[n] = static_cast<double>(n) * l0;
  return DomainStack(std::move(z), l0, StackKind::periodic, {});
}

DomainStack build_random(std::size_t n_domains, double l0, double sigma, std::uint64_t seed) {
  require_shape(n_domains, l0);
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ArgumentError("sigma must be >= 0");
  StackProvenance provenance{.sigma = sigma, .seed = seed};
  if (sigma == 0.0) {
    auto periodic = build_periodic(n_domains, l0);
    std::vector<double> z(periodic.boundaries().begin(), periodic.boundaries().end());
    return DomainStack(std::move(z), l0, StackKind::random, provenance);
  }
  auto gen = make_generator(seed);
  std::normal_distribution<double> declination(0.0, sigma / std::sqrt(2.0));
  std::vector<double> z(n_domains + 1);
  z[0] = 0.0;
  for (std::size_t n = 1; n <= n_domains; ++n) {
    double length = l0 + declination(gen);
    while (!(length > 0.0)) {
      ++provenance.rejections;
      length = l0 + declination(gen);
    }
    z[n] = z[n - 1] + length;
  }
  return DomainStack(std::move(z), l0, StackKind::random, provenance);
}

DomainStack build_chirped(std::size_t n_domains, double l0, double zeta, double delta_k0) {
  require_shape(n_domains, l0);
  if (!std::isfinite(zeta)) throw ArgumentError("chirp parameter must be finite");
  if (!(delta_k0 > 0.0)) throw ArgumentError("chirped stack needs delta_k0 > 0");
  const double zeta_prime = zeta / delta_k0;
  const double half = 0.5 * static_cast<double>(n_domains);
  const double curvature = zeta_prime * l0 * l0;
  const auto raw = [&](std::size_t n) {
    const double x = static_cast<double>(n) - half;
    return static_cast<double>(n) * l0 + curvature * x * x;
  };
  const double origin = raw(0);
  std::vector<double> z(n_domains + 1);
  z[0] = 0.0;
  for (std::size_t n = 1; n <= n_domains; ++n) {
    z[n] = raw(n) - origin;
    if (!(z[n] > z[n - 1])) {
      throw ArgumentError("chirp too strong: boundaries stop increasing at index " + std::to_string(n));
    }
  }
  return DomainStack(std::move(z), l0, StackKind::chirped, {.zeta = zeta, .delta_k0 = delta_k0});
}

void write_stack(std::ostream& out, const DomainStack& stack) {
  const auto& p = stack.provenance();
  out << "# kind: " << to_string(stack.kind()) << '\n'
      << "# domains: " << stack.domain_count() << '\n'
      << "# base_length_m: " << format_double(stack.base_length()) << '\n'
      << "# sigma_m: " << format_double(p.sigma) << '\n'
      << "# zeta_per_m2: " << format_double(p.zeta) << '\n'
      << "# delta_k0_per_m: " << format_double(p.delta_k0) << '\n'
      << "# seed: " << p.seed << '\n'
      << "# rejections: " << p.rejections << '\n';
  for (double z : stack.boundaries()) out << format_double(z) << '\n';
}

DomainStack read_stack(std::istream& in) {
  std::map<std::string, std::string> header;
  std::vector<double> z;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      auto key = line.substr(1, colon - 1);
      auto value = line.substr(colon + 1);
      key.erase(0, key.find_first_not_of(' '));
      value.erase(0, value.find_first_not_of(' '));
      header[key] = value;
      continue;
    }
    try {
      z.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw ArgumentError("stack file: bad boundary line '" + line + "'");
    }
  }
  const auto field = [&](const char* key) -> const std::string& {
    const auto it = header.find(key);
    if (it == header.end()) throw ArgumentError(std::string("stack file: missing header '") + key + "'");
    return it->second;
  };
  if (std::stoull(field("domains")) + 1 != z.size()) {
    throw ArgumentError("stack file: boundary count does not match the domains header");
  }
  StackProvenance p{.sigma = std::stod(field("sigma_m")),
                    .zeta = std::stod(field("zeta_per_m2")),
                    .delta_k0 = std::stod(field("delta_k0_per_m")),
                    .seed = std::stoull(field("seed")),
                    .rejections = std::stoull(field("rejections"))};
  return DomainStack(std::move(z), std::stod(field("base_length_m")), stack_kind_from_string(field("kind")), p);
}

}  // namespace spdc
