#include "entprod/regulated.hpp"

#include <algorithm>

namespace entprod {

RegulatedBV::RegulatedBV(Interval support, std::function<double(double)> ac,
                         std::function<double(double)> density, std::vector<Jump> jumps)
    : support_(support), ac_(std::move(ac)), density_(std::move(density)), jumps_(std::move(jumps)) {
    if (!(support_.hi > support_.lo)) throw std::invalid_argument("regulated: empty support");
    for (std::size_t i = 0; i < jumps_.size(); ++i) {
        if (!std::isfinite(jumps_[i].at) || !std::isfinite(jumps_[i].size))
            throw std::invalid_argument("regulated: non-finite jump");
        if (i > 0 && !(jumps_[i].at > jumps_[i - 1].at))
            throw std::invalid_argument("regulated: jump locations must be strictly increasing");
    }
}

double RegulatedBV::left_limit(double k) const {
    double v = ac_(k);
    for (const auto& j : jumps_)
        if (j.at < k) v += j.size;
    return v;
}

double RegulatedBV::right_limit(double k) const {
    double v = ac_(k);
    for (const auto& j : jumps_)
        if (j.at <= k) v += j.size;
    return v;
}

double RegulatedBV::value(double k) const {
    double v = ac_(k);
    for (const auto& j : jumps_) {
        if (j.at < k)
            v += j.size;
        else if (j.at == k)
            v += 0.5 * j.size;
    }
    return v;
}

double RegulatedBV::stored_value(std::size_t j) const { return value(jumps_.at(j).at); }

std::vector<double> RegulatedBV::jump_points() const {
    std::vector<double> p;
    p.reserve(jumps_.size());
    for (const auto& j : jumps_) p.push_back(j.at);
    return p;
}

double RegulatedBV::total_variation(const QuadratureSpec& spec) const {
    QuadratureSpec s = spec;
    s.gauss_order = spec.k_axis_order;
    const auto pts = jump_points();
    double tv = integrate_1d<double>([&](double k) { return std::abs(density_(k)); }, support_.lo,
                                     support_.hi, pts, s)
                    .value;
    for (const auto& j : jumps_) tv += std::abs(j.size);
    return tv;
}

RegulatedBV RegulatedBV::combine(double a, const RegulatedBV& other, double b) const {
    if (support_.lo != other.support_.lo || support_.hi != other.support_.hi)
        throw std::invalid_argument("regulated: combine requires equal supports");
    std::vector<Jump> merged;
    for (const auto& j : jumps_) merged.push_back({j.at, a * j.size});
    for (const auto& j : other.jumps_) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const Jump& m) { return m.at == j.at; });
        if (it != merged.end())
            it->size += b * j.size;
        else
            merged.push_back({j.at, b * j.size});
    }
    std::sort(merged.begin(), merged.end(), [](const Jump& l, const Jump& r) { return l.at < r.at; });
    std::erase_if(merged, [](const Jump& j) { return j.size == 0.0; });
    auto ac1 = ac_, ac2 = other.ac_, d1 = density_, d2 = other.density_;
    return RegulatedBV(support_, [=](double k) { return a * ac1(k) + b * ac2(k); },
                       [=](double k) { return a * d1(k) + b * d2(k); }, std::move(merged));
}

RegulatedBV regulated_normalize(Interval support, std::function<double(double)> ac,
                                std::function<double(double)> density, std::vector<JumpLimits> limits) {
    std::sort(limits.begin(), limits.end(), [](const JumpLimits& l, const JumpLimits& r) { return l.at < r.at; });
    std::vector<Jump> jumps;
    double accumulated = 0.0;
    for (const auto& l : limits) {
        if (!std::isfinite(l.at) || !std::isfinite(l.left) || !std::isfinite(l.right))
            throw std::invalid_argument("regulated_normalize: non-finite limit");
        const double expected_left = ac(l.at) + accumulated;
        const double scale = 1.0 + std::abs(expected_left);
        if (std::abs(expected_left - l.left) > 1e-12 * scale)
            throw std::invalid_argument("regulated_normalize: left limit inconsistent with accumulated value");
        const double size = l.right - l.left;
        if (size != 0.0) {
            jumps.push_back({l.at, size});
            accumulated += size;
        }
    }
    return RegulatedBV(support, std::move(ac), std::move(density), std::move(jumps));
}

}  // namespace entprod
