#pragma once

#include <string>
#include <vector>

#include "almostperiods/rational.hpp"

namespace almostperiods {

// Finite nonincreasing sequence of nonnegative rationals with trailing
// zeros dropped: an element of l^infty_>=(N)_0 with finite support.
// Entry i is gamma_{i+1} in the usual 1-based indexing.
class EldivSeq {
  public:
    EldivSeq() = default;
    explicit EldivSeq(std::vector<Rational> entries);

    const std::vector<Rational>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    // gamma_{i+1}, zero beyond the stored support
    Rational at(size_t i) const {
        return i < entries_.size() ? entries_[i] : Rational(0);
    }

    friend bool operator==(const EldivSeq&, const EldivSeq&) = default;

    std::string str() const;

  private:
    std::vector<Rational> entries_;
};

// length: sum of the entries
Rational lambda(const EldivSeq& g);

// sup-distance max_i |g_i - h_i|, padding with zeros
Rational linf_dist(const EldivSeq& g, const EldivSeq& h);

// majorization: every prefix sum of g dominates that of h
bool majorizes(const EldivSeq& g, const EldivSeq& h);

// entry-wise max(g_i - eps, 0), renormalized
EldivSeq shift_eps(const EldivSeq& g, const Rational& eps);

// aligned entry-wise sum
EldivSeq indexwise_sum(const EldivSeq& g, const EldivSeq& h);

// sorted merge of the two multisets (divisors of a direct sum)
EldivSeq merge_sorted(const EldivSeq& g, const EldivSeq& h);

} // namespace almostperiods
