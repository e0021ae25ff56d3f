#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dsp/graph.hpp"

namespace dsp {

/// Scaled integer weight for one edge: absent when len > B, else
/// ceil(A * len / B). The A*len product is corrected with its fma residual so
/// quotients that are mathematically integral never round to the wrong side.
std::optional<std::int64_t> round_edge(double len, std::int64_t scale_a, double scale_b);

/// The family of integer-rounded working copies of the input graph.
///
/// approx mode (epsilon > 0): copies x = 0..k with B_x = 2^x,
///   k = ceil(log2(n * W)) and A = ceil(2 * h / epsilon) for hop bound
///   h = ceil(n^a). Edge lengths of every copy lie in [1, A].
/// exact mode (epsilon = 0, integer weights only): a single copy equal to
///   the input graph, A = B = W * h.
class RoundedFamily {
 public:
  struct Copy {
    int x;
    double scale_b;  // B_x
    CopyGraph graph;
  };

  static RoundedFamily build(const DynamicGraph& g, double epsilon, double hop_exp);

  double epsilon() const { return epsilon_; }
  double hop_exp() const { return hop_exp_; }
  std::int64_t hop_bound() const { return hop_bound_; }  // h = ceil(n^a)
  std::int64_t scale_a() const { return scale_a_; }
  bool exact_mode() const { return epsilon_ == 0.0; }

  std::size_t copy_count() const { return copies_.size(); }
  const Copy& copy(std::size_t i) const { return copies_[i]; }
  const std::vector<Copy>& copies() const { return copies_; }

  /// Mirrors one graph update into every copy; len == kInfLen removes the
  /// edge everywhere. Returns (x, rounded weight or absent) per copy.
  std::vector<std::pair<int, std::optional<std::int64_t>>> propagate_update(Vertex u, Vertex v,
                                                                            double len);

  /// (B_x / A) * d, mapping a copy distance back to input-graph scale.
  double lift(std::size_t i, std::int64_t d) const {
    return copies_[i].scale_b * static_cast<double>(d) / static_cast<double>(scale_a_);
  }

 private:
  RoundedFamily() = default;
  double epsilon_ = 0;
  double hop_exp_ = 0;
  std::int64_t hop_bound_ = 0;
  std::int64_t scale_a_ = 0;
  std::vector<Copy> copies_;
};

/// h = ceil(n^a).
std::int64_t hop_bound_for(std::uint32_t n, double hop_exp);

}  // namespace dsp
