#include "qdl/fixtures.hpp"

#include <map>
#include <mutex>

#include "qdl/error.hpp"

namespace qdl {

namespace {

// Braiding on a 3x3 plane: m pair along xi_prime (s2 -> s3), e pair along xi (s0 -> s1),
// and a loop from s1 once around the face of s3.
constexpr const char* kBraid = R"({
  "version": 1,
  "lattice": {"topology": "plane", "width": 3, "height": 3},
  "xi": {"sites": [
    {"v": [0, 2], "p": [0, 1]}, {"v": [1, 2], "p": [0, 1]}, {"v": [1, 2], "p": [1, 1]},
    {"v": [2, 2], "p": [1, 1]}, {"v": [2, 1], "p": [1, 1]}, {"v": [2, 1], "p": [1, 0]}]},
  "xi_prime": {"sites": [
    {"v": [1, 1], "p": [0, 0]}, {"v": [1, 1], "p": [1, 0]}, {"v": [1, 1], "p": [1, 1]},
    {"v": [1, 2], "p": [1, 1]}]},
  "xi_loop": {"sites": [
    {"v": [2, 1], "p": [1, 0]}, {"v": [2, 1], "p": [1, 1]}, {"v": [1, 1], "p": [1, 1]},
    {"v": [1, 2], "p": [1, 1]}, {"v": [2, 2], "p": [1, 1]}, {"v": [2, 1], "p": [1, 1]},
    {"v": [2, 1], "p": [1, 0]}]}
})";

// Creation on edge s then transport across t and along u.
constexpr const char* kCreation = R"({
  "version": 1,
  "lattice": {"topology": "plane", "width": 3, "height": 3},
  "edges": {"s": [1, 0, "v"], "t": [1, 1, "h"], "u": [1, 1, "v"]},
  "sites": {
    "v1p1": {"v": [1, 0], "p": [0, 0]},
    "v2p2": {"v": [1, 1], "p": [1, 0]},
    "v3p3": {"v": [1, 2], "p": [1, 1]}},
  "create": {"triangles": [
    {"kind": "direct", "edge": [1, 0, "v"], "from": {"v": [1, 0], "p": [0, 0]}, "to": {"v": [1, 1], "p": [0, 0]}},
    {"kind": "dual", "edge": [1, 0, "v"], "from": {"v": [1, 1], "p": [0, 0]}, "to": {"v": [1, 1], "p": [1, 0]}}]},
  "transport": {"triangles": [
    {"kind": "dual", "edge": [1, 1, "h"], "from": {"v": [1, 1], "p": [1, 0]}, "to": {"v": [1, 1], "p": [1, 1]}},
    {"kind": "direct", "edge": [1, 1, "v"], "from": {"v": [1, 1], "p": [1, 1]}, "to": {"v": [1, 2], "p": [1, 1]}}]}
})";

// Four pairwise disjoint sites, one per face of a 3x3 plane.
constexpr const char* kS3Qubit = R"({
  "version": 1,
  "lattice": {"topology": "plane", "width": 3, "height": 3},
  "sites": {
    "s0": {"v": [0, 0], "p": [0, 0]},
    "s1": {"v": [2, 0], "p": [1, 0]},
    "s2": {"v": [0, 2], "p": [0, 1]},
    "s3": {"v": [2, 2], "p": [1, 1]}},
  "xi": {"sites": [
    {"v": [0, 0], "p": [0, 0]}, {"v": [0, 1], "p": [0, 0]}, {"v": [1, 1], "p": [0, 0]},
    {"v": [1, 1], "p": [1, 0]}, {"v": [2, 1], "p": [1, 0]}, {"v": [2, 0], "p": [1, 0]}]},
  "xi_alt": {"sites": [
    {"v": [0, 0], "p": [0, 0]}, {"v": [1, 0], "p": [0, 0]}, {"v": [1, 0], "p": [1, 0]},
    {"v": [2, 0], "p": [1, 0]}]},
  "xi_prime": {"sites": [
    {"v": [0, 2], "p": [0, 1]}, {"v": [1, 2], "p": [0, 1]}, {"v": [1, 2], "p": [1, 1]},
    {"v": [2, 2], "p": [1, 1]}]},
  "xi_pp": {"sites": [
    {"v": [0, 0], "p": [0, 0]}, {"v": [0, 1], "p": [0, 0]}, {"v": [0, 1], "p": [0, 1]},
    {"v": [0, 2], "p": [0, 1]}]},
  "xi_b": {"sites": [
    {"v": [2, 0], "p": [1, 0]}, {"v": [2, 1], "p": [1, 0]}, {"v": [2, 1], "p": [1, 1]},
    {"v": [2, 2], "p": [1, 1]}]}
})";

}  // namespace

const nlohmann::json& fixture(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, nlohmann::json> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  const char* text = nullptr;
  if (name == "braid") text = kBraid;
  if (name == "creation") text = kCreation;
  if (name == "s3_qubit") text = kS3Qubit;
  if (!text) throw Error(ErrorKind::ConfigError, "unknown fixture '" + name + "'");
  return cache.emplace(name, nlohmann::json::parse(text)).first->second;
}

}  // namespace qdl
