#include "ordstat/arith.hpp"

#include <cmath>

#include "ordstat/errors.hpp"

namespace ordstat {

namespace {

void require_finite(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw InvalidInput("pairwise min/max requires finite operands");
    }
}

double checked(double r) {
    if (!std::isfinite(r)) {
        throw InvalidInput("pairwise min/max overflowed");
    }
    return r;
}

} // namespace

double pairwise_min_arith(double a, double b) {
    require_finite(a, b);
    return checked((a + b - std::fabs(a - b)) / 2);
}

double pairwise_max_arith(double a, double b) {
    require_finite(a, b);
    return checked((a + b + std::fabs(a - b)) / 2);
}

double min_chain(const RealSequence& seq) {
    const auto xs = seq.values();
    double acc = xs[0];
    for (std::size_t k = 1; k < xs.size(); ++k) {
        acc = pairwise_min_arith(acc, xs[k]);
    }
    return acc;
}

double max_chain(const RealSequence& seq) {
    const auto xs = seq.values();
    double acc = xs[0];
    for (std::size_t k = 1; k < xs.size(); ++k) {
        acc = pairwise_max_arith(acc, xs[k]);
    }
    return acc;
}

} // namespace ordstat
