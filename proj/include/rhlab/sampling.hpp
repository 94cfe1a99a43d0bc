#ifndef RHLAB_SAMPLING_HPP
#define RHLAB_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "rhlab/fields.hpp"

namespace rhlab {

//! Radical-inverse of index in the given base (van der Corput).
double radical_inverse(std::uint64_t index, std::uint64_t base);

//! Deterministic Halton points mapped into the chart box, exclusions applied
//! with replacement draws. Same (domain, count, seed) gives the same list.
std::vector<Point> sample_points(const ChartDomain& domain, int count,
                                 std::uint64_t seed);

}  // namespace rhlab

#endif
