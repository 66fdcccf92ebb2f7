#include "kway/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace kway {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

constexpr std::array<std::pair<std::string_view, Policy>, 5> kPolicyNames{{
    {"lru", Policy::kLru},
    {"lfu", Policy::kLfu},
    {"fifo", Policy::kFifo},
    {"random", Policy::kRandom},
    {"hyperbolic", Policy::kHyperbolic},
}};

constexpr std::array<std::pair<std::string_view, Variant>, 4> kVariantNames{{
    {"wfa", Variant::kWfa},
    {"wfsc", Variant::kWfsc},
    {"ls", Variant::kLs},
    {"st", Variant::kSt},
}};

}  // namespace

std::string_view to_string(Policy p) noexcept {
  for (const auto& [name, value] : kPolicyNames)
    if (value == p) return name;
  return "?";
}

std::string_view to_string(Variant v) noexcept {
  for (const auto& [name, value] : kVariantNames)
    if (value == v) return name;
  return "?";
}

Policy parse_policy(std::string_view name) {
  for (const auto& [n, value] : kPolicyNames)
    if (iequals(n, name)) return value;
  throw std::invalid_argument("unknown policy: " + std::string(name));
}

Variant parse_variant(std::string_view name) {
  for (const auto& [n, value] : kVariantNames)
    if (iequals(n, name)) return value;
  throw std::invalid_argument("unknown variant: " + std::string(name));
}

CacheConfig CacheConfig::make(std::size_t requested_capacity, std::size_t ways,
                              Policy policy, Variant variant, bool admission,
                              std::uint64_t hash_seed) {
  if (requested_capacity == 0) throw std::invalid_argument("capacity must be positive");
  if (ways == 0) throw std::invalid_argument("ways must be positive");
  if (ways > requested_capacity)
    throw std::invalid_argument("ways (" + std::to_string(ways) + ") exceeds capacity (" +
                                std::to_string(requested_capacity) + ")");
  const std::size_t sets = next_power_of_two((requested_capacity + ways - 1) / ways);
  CacheConfig c;
  c.capacity = sets * ways;
  c.ways = ways;
  c.policy = policy;
  c.variant = variant;
  c.admission = admission;
  c.hash_seed = hash_seed;
  return c;
}

std::string describe(const CacheConfig& config) {
  std::string out;
  out += "capacity=" + std::to_string(config.capacity);
  out += " ways=" + std::to_string(config.ways);
  out += " sets=" + std::to_string(config.num_sets());
  out += " policy=" + std::string(to_string(config.policy));
  out += " variant=" + std::string(to_string(config.variant));
  out += " admission=" + std::string(config.admission ? "on" : "off");
  out += " hash_seed=" + std::to_string(config.hash_seed);
  return out;
}

}  // namespace kway
