#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace pbgame {

/// Vertices are the integers 1..n.
using Vertex = int;
/// Colours are 1..k; 0 marks an uncoloured vertex.
using Colour = int;
inline constexpr Colour kUncoloured = 0;

/// Undirected edge, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;

  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
  }
};

struct GameConfig {
  int n = 2;  ///< vertex count
  int k = 1;  ///< palette size
  int p = 1;  ///< vertices painted per Painter turn
  int b = 1;  ///< edges drawn per Builder turn

  friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws ConfigError unless n >= 2, k >= 1, p >= 1, b >= 1.
void validate(const GameConfig& config);

enum class Turn { Painter, Builder };
enum class Status { Ongoing, PainterWin, BuilderWin };

std::string to_string(Turn turn);
std::string to_string(Status status);
Status status_from_string(const std::string& text);

}  // namespace pbgame

template <>
struct std::hash<pbgame::Edge> {
  std::size_t operator()(const pbgame::Edge& e) const noexcept {
    return std::hash<std::uint64_t>{}(e.key());
  }
};
