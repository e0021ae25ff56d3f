#include "dsp/rounding.hpp"

#include <cmath>
#include <stdexcept>

namespace dsp {

std::optional<std::int64_t> round_edge(double len, std::int64_t scale_a, double scale_b) {
  if (!(len >= 1.0)) throw std::invalid_argument("edge length must be >= 1");
  if (len > scale_b) return std::nullopt;  // includes kInfLen
  if (static_cast<double>(scale_a) == scale_b)
    return static_cast<std::int64_t>(std::ceil(len));
  const double a = static_cast<double>(scale_a);
  const double p = a * len;
  const double residual = std::fma(a, len, -p);
  const double q = p / scale_b;  // exact for power-of-two B
  double c = std::ceil(q);
  if (c == q && residual > 0) c += 1;  // true product just above an integer multiple
  return static_cast<std::int64_t>(c);
}

std::int64_t hop_bound_for(std::uint32_t n, double hop_exp) {
  return static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(n), hop_exp)));
}

RoundedFamily RoundedFamily::build(const DynamicGraph& g, double epsilon, double hop_exp) {
  if (!(hop_exp > 0.0) || !(hop_exp < 1.0))
    throw std::invalid_argument("hop exponent must lie in (0, 1)");
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  if (epsilon == 0.0 && g.domain() != WeightDomain::integer)
    throw std::invalid_argument("exact rounding (epsilon = 0) needs integer weights");

  RoundedFamily f;
  f.epsilon_ = epsilon;
  f.hop_exp_ = hop_exp;
  f.hop_bound_ = hop_bound_for(g.vertex_count(), hop_exp);

  if (epsilon == 0.0) {
    f.scale_a_ = static_cast<std::int64_t>(g.max_weight()) * f.hop_bound_;
    f.copies_.push_back(Copy{0, static_cast<double>(f.scale_a_), CopyGraph(g.vertex_count(), g.mode())});
  } else {
    f.scale_a_ = static_cast<std::int64_t>(
        std::ceil(2.0 * static_cast<double>(f.hop_bound_) / epsilon));
    const double nw = static_cast<double>(g.vertex_count()) * g.max_weight();
    const int k = std::max(0, static_cast<int>(std::ceil(std::log2(nw))));
    for (int x = 0; x <= k; ++x)
      f.copies_.push_back(Copy{x, std::ldexp(1.0, x), CopyGraph(g.vertex_count(), g.mode())});
  }

  g.for_each_edge([&](Vertex u, Vertex v, double w) {
    for (auto& c : f.copies_)
      if (auto r = round_edge(w, f.scale_a_, c.scale_b)) c.graph.set(u, v, *r);
  });
  return f;
}

std::vector<std::pair<int, std::optional<std::int64_t>>> RoundedFamily::propagate_update(
    Vertex u, Vertex v, double len) {
  std::vector<std::pair<int, std::optional<std::int64_t>>> out;
  out.reserve(copies_.size());
  for (auto& c : copies_) {
    std::optional<std::int64_t> r;
    if (len != kInfLen) r = round_edge(len, scale_a_, c.scale_b);
    c.graph.set(u, v, r);
    out.emplace_back(c.x, r);
  }
  return out;
}

}  // namespace dsp
