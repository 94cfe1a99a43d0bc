#include "rhlab/sampling.hpp"

#include "rhlab/errors.hpp"

namespace rhlab {

namespace {
constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};
}

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double inv_base = 1.0 / static_cast<double>(base);
  double result = 0.0;
  double frac = inv_base;
  while (index > 0) {
    result += static_cast<double>(index % base) * frac;
    index /= base;
    frac *= inv_base;
  }
  return result;
}

std::vector<Point> sample_points(const ChartDomain& domain, int count,
                                 std::uint64_t seed) {
  if (count < 1) throw Error(ErrorCode::BadParams, "sample count must be >= 1");
  if (domain.dim < 1 ||
      domain.dim > static_cast<int>(sizeof(kPrimes) / sizeof(kPrimes[0])))
    throw Error(ErrorCode::BadParams, "unsupported chart dimension");
  for (int i = 0; i < domain.dim; ++i)
    if (!(domain.lower[i] < domain.upper[i]))
      throw Error(ErrorCode::DomainExhausted, "degenerate chart box");

  std::vector<Point> out;
  out.reserve(count);
  // Index 0 maps to the box corner; skip it, offset deterministically by seed.
  std::uint64_t index = 1 + seed * 1009;
  const std::uint64_t max_draws =
      200 * static_cast<std::uint64_t>(count) + 1000;
  std::uint64_t draws = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++draws > max_draws)
      throw Error(ErrorCode::DomainExhausted,
                  "exclusions rejected more than 99% of draws");
    Point p(domain.dim);
    for (int d = 0; d < domain.dim; ++d) {
      double u = radical_inverse(index, kPrimes[d]);
      p[d] = domain.lower[d] + u * (domain.upper[d] - domain.lower[d]);
    }
    ++index;
    if (!domain.admissible(p)) continue;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace rhlab
