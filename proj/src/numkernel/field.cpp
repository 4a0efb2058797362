#include "lagmech/numkernel/field.hpp"

namespace lagmech::numkernel {

std::shared_ptr<const VectorField> zero_vector_field(std::size_t n) {
  return make_vector_field(n, []<class T>(std::span<const T> x, std::span<const T>) {
    std::vector<T> out;
    out.reserve(x.size());
    for (const auto& xi : x) out.push_back(lift(0.0, xi));
    return out;
  });
}

}  // namespace lagmech::numkernel
