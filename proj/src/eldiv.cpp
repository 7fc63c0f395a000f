#include "almostperiods/eldiv.hpp"

#include <algorithm>

#include "almostperiods/errors.hpp"

namespace almostperiods {

EldivSeq::EldivSeq(std::vector<Rational> entries) : entries_(std::move(entries)) {
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] < Rational(0)) throw input_error("negative elementary divisor");
        if (i && entries_[i - 1] < entries_[i]) throw input_error("divisors not nonincreasing");
    }
    while (!entries_.empty() && entries_.back().is_zero()) entries_.pop_back();
}

std::string EldivSeq::str() const {
    std::string out = "(";
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (i) out += ",";
        out += entries_[i].str();
    }
    return out + ")";
}

Rational lambda(const EldivSeq& g) {
    Rational s(0);
    for (const auto& e : g.entries()) s += e;
    return s;
}

Rational linf_dist(const EldivSeq& g, const EldivSeq& h) {
    Rational d(0);
    size_t n = std::max(g.size(), h.size());
    for (size_t i = 0; i < n; ++i) d = max(d, abs(g.at(i) - h.at(i)));
    return d;
}

bool majorizes(const EldivSeq& g, const EldivSeq& h) {
    Rational pg(0), ph(0);
    size_t n = std::max(g.size(), h.size());
    for (size_t i = 0; i < n; ++i) {
        pg += g.at(i);
        ph += h.at(i);
        if (pg < ph) return false;
    }
    return true;
}

EldivSeq shift_eps(const EldivSeq& g, const Rational& eps) {
    if (!(eps > Rational(0))) throw input_error("shift_eps needs eps > 0");
    std::vector<Rational> out;
    for (const auto& e : g.entries()) out.push_back(max(e - eps, Rational(0)));
    return EldivSeq(std::move(out));
}

EldivSeq indexwise_sum(const EldivSeq& g, const EldivSeq& h) {
    std::vector<Rational> out;
    size_t n = std::max(g.size(), h.size());
    for (size_t i = 0; i < n; ++i) out.push_back(g.at(i) + h.at(i));
    return EldivSeq(std::move(out));
}

EldivSeq merge_sorted(const EldivSeq& g, const EldivSeq& h) {
    std::vector<Rational> out = g.entries();
    out.insert(out.end(), h.entries().begin(), h.entries().end());
    std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) { return b < a; });
    return EldivSeq(std::move(out));
}

} // namespace almostperiods
