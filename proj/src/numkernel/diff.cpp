#include "lagmech/numkernel/diff.hpp"

#include <initializer_list>
#include <utility>

namespace lagmech::numkernel {

Jet3<double> eval_jet(const ScalarField& f, const PhasePoint& p, int order) {
  if (order < 0 || order > 3) throw std::invalid_argument("eval_jet: order must be in [0, 3]");
  return seeded_jet<double>(f, std::span<const double>(p.x), std::span<const double>(p.y), order);
}

namespace {

// Evaluates f in quadruple precision at p shifted by integer multiples of h.
// Coordinates 0..n-1 address x, n..2n-1 address y.
class ShiftedEvaluator {
 public:
  ShiftedEvaluator(const ScalarField& f, const PhasePoint& p, double h) : f_(f), p_(p), h_(h) {}

  Quad operator()(std::initializer_list<std::pair<std::size_t, int>> shifts) const {
    const std::size_t n = p_.dim();
    std::vector<Quad> x(n);
    std::vector<Quad> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = Quad(p_.x[i]);
      y[i] = Quad(p_.y[i]);
    }
    for (const auto& [coord, steps] : shifts) {
      Quad& slot = coord < n ? x[coord] : y[coord - n];
      slot += h_ * steps;
    }
    Quad v = f_.eval(std::span<const Quad>(x), std::span<const Quad>(y));
    if (!all_finite(v)) throw DomainError("fd_oracle: non-finite field value");
    return v;
  }

  const Quad& h() const { return h_; }

 private:
  const ScalarField& f_;
  const PhasePoint& p_;
  Quad h_;
};

double to_double(const Quad& q) { return static_cast<double>(q); }

}  // namespace

Jet3<double> fd_oracle(const ScalarField& f, const PhasePoint& p, int order, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_oracle: step must be positive");
  if (order < 0 || order > 3) throw std::invalid_argument("fd_oracle: order must be in [0, 3]");
  const std::size_t n = p.dim();
  const ShiftedEvaluator at(f, p, h);
  const Quad& hq = at.h();
  const Quad f0 = at({});

  Jet3<double> jet(n, order);
  jet.value() = to_double(f0);
  if (order >= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      jet.dx(i) = to_double((at({{i, 1}}) - at({{i, -1}})) / (2 * hq));
      jet.dy(i) = to_double((at({{n + i, 1}}) - at({{n + i, -1}})) / (2 * hq));
    }
  }
  if (order >= 2) {
    const Quad h2 = hq * hq;
    auto mixed = [&](std::size_t a, std::size_t b) {
      return (at({{a, 1}, {b, 1}}) - at({{a, 1}, {b, -1}}) - at({{a, -1}, {b, 1}}) +
              at({{a, -1}, {b, -1}})) /
             (4 * h2);
    };
    for (std::size_t i = 0; i < n; ++i) {
      const double dii = to_double((at({{n + i, 1}}) - 2 * f0 + at({{n + i, -1}})) / h2);
      jet.dyy(i, i) = dii;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dij = to_double(mixed(n + i, n + j));
        jet.dyy(i, j) = dij;
        jet.dyy(j, i) = dij;
      }
      for (std::size_t j = 0; j < n; ++j) jet.dxy(i, j) = to_double(mixed(n + i, j));
    }
  }
  if (order >= 3) {
    const Quad h3 = hq * hq * hq;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        for (std::size_t k = j; k < n; ++k) {
          const std::size_t a = n + i;
          const std::size_t b = n + j;
          const std::size_t c = n + k;
          Quad d;
          if (i == j && j == k) {
            d = (at({{a, 2}}) - 2 * at({{a, 1}}) + 2 * at({{a, -1}}) - at({{a, -2}})) / (2 * h3);
          } else if (i == j || j == k) {
            // d^3 / da^2 db with a the repeated coordinate.
            const std::size_t rep = (i == j) ? a : c;
            const std::size_t other = (i == j) ? c : a;
            const Quad plus = at({{rep, 1}, {other, 1}}) - 2 * at({{other, 1}}) + at({{rep, -1}, {other, 1}});
            const Quad minus =
                at({{rep, 1}, {other, -1}}) - 2 * at({{other, -1}}) + at({{rep, -1}, {other, -1}});
            d = (plus - minus) / (2 * h3);
          } else {
            Quad acc = 0;
            for (int sa : {1, -1})
              for (int sb : {1, -1})
                for (int sc : {1, -1}) acc += (sa * sb * sc) * at({{a, sa}, {b, sb}, {c, sc}});
            d = acc / (8 * h3);
          }
          jet.set_dyyy_symmetric(i, j, k, to_double(d));
        }
      }
    }
  }
  return jet;
}

}  // namespace lagmech::numkernel
