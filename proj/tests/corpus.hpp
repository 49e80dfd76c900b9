#pragma once

// Deterministic instance families shared by the unit and acceptance suites.

#include <string>
#include <vector>

#include "rdom/rdom.hpp"

namespace rdom::testing {

struct BallInstance {
  std::string name;
  Graph graph;
  std::vector<Ball> balls;
};

// Largest finite shortest-path distance in g (undirected corpus graphs).
inline Length diameter(const Graph& g) {
  Dist best = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    auto labels = single_source(g, v);
    for (auto d : labels.dist) {
      if (d != kUnreached) best = std::max(best, d);
    }
  }
  return static_cast<Length>(best);
}

/// 200 planar ball systems on grid subgraphs up to 20 x 20 with 2..40 balls.
/// Radii are drawn from small, medium and whole-graph ranges; every fifth
/// instance also gets one ball whose radius exceeds the diameter.
inline std::vector<BallInstance> planar_ball_corpus(std::size_t count = 200) {
  static const double keep[] = {0.3, 0.6, 0.85, 1.0};
  static const Length lens[] = {1, 3, 8};
  std::vector<BallInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    int w = 2 + static_cast<int>(i % 19);
    int h = 2 + static_cast<int>((i * 7) % 19);
    auto g = gen_planar(1000 + i, w, h, keep[i % 4], lens[(i / 4) % 3]);
    auto diam = diameter(g);
    std::size_t nballs = 2 + (i * 13) % 39;
    Length max_r = 0;
    switch (i % 3) {
      case 0: max_r = std::max<Length>(1, diam / 6); break;
      case 1: max_r = std::max<Length>(1, diam / 3); break;
      default: max_r = std::max<Length>(1, diam); break;
    }
    auto balls = random_balls(g, 5000 + i, nballs, 0, max_r);
    if (i % 5 == 0) balls.back().radius = diam + 1 + static_cast<Length>(i % 7);
    out.push_back({"planar-" + std::to_string(i) + "-" + std::to_string(w) + "x" + std::to_string(h), std::move(g),
                   std::move(balls)});
  }
  return out;
}

struct RedBlueInstance {
  std::string name;
  Graph graph;
  std::vector<Ball> red;
  std::vector<Ball> blue;
};

/// Red/blue systems on planar grid subgraphs; directed ones orient every
/// edge randomly (some kept two-way). Red ids start at 0, blue ids at 1000.
inline std::vector<RedBlueInstance> red_blue_corpus(std::size_t count, bool directed, std::uint64_t salt) {
  std::vector<RedBlueInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    int w = 2 + static_cast<int>((i * 5) % 14);
    int h = 2 + static_cast<int>((i * 3) % 11);
    auto g = gen_planar(salt + i, w, h, (i % 2) ? 0.5 : 0.9, 1 + static_cast<Length>(i % 4));
    if (directed) g = orient_randomly(g, salt + i, 0.3);
    auto diam = diameter(g);
    Length max_r = std::max<Length>(1, diam / (2 + static_cast<Length>(i % 3)));
    auto red = random_balls(g, salt + 100 + i, 2 + (i * 7) % 19, 0, max_r, 0);
    auto blue = random_balls(g, salt + 200 + i, 1 + (i * 11) % 20, 0, max_r, 1000);
    out.push_back({(directed ? "directed-" : "undirected-") + std::to_string(i), std::move(g), std::move(red),
                   std::move(blue)});
  }
  return out;
}

struct DomInstance {
  std::string name;
  Graph graph;
  Length radius;
};

/// r-domination instances with at most 20 vertices (exact oracle range).
inline std::vector<DomInstance> small_dom_corpus(std::size_t count) {
  std::vector<DomInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    int w = 2 + static_cast<int>(i % 4);
    int h = 2 + static_cast<int>((i / 4) % 4);
    if (w * h > 20) h = 20 / w;
    auto g = gen_planar(7000 + i, w, h, (i % 3 == 0) ? 1.0 : 0.5, 1 + static_cast<Length>(i % 5));
    auto diam = diameter(g);
    Length r = static_cast<Length>(i % 4) * std::max<Length>(1, diam / 4);
    out.push_back({"small-" + std::to_string(i), std::move(g), r});
  }
  return out;
}

/// Larger r-domination instances (up to 20 x 20).
inline std::vector<DomInstance> large_dom_corpus(std::size_t count) {
  std::vector<DomInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    int w = 4 + static_cast<int>((i * 3) % 17);
    int h = 4 + static_cast<int>((i * 5) % 17);
    auto g = gen_planar(9000 + i, w, h, (i % 2) ? 0.7 : 1.0, 1 + static_cast<Length>(i % 6));
    auto diam = diameter(g);
    Length r = std::max<Length>(1, diam * static_cast<Length>(1 + i % 4) / 10);
    out.push_back({"large-" + std::to_string(i), std::move(g), r});
  }
  return out;
}

}  // namespace rdom::testing
