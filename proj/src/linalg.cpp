#include "fident/linalg.hpp"

namespace fident {

namespace {

void axpy(SparseVec& w, const SparseVec& v, const Rational& a) {
    for (const auto& [k, x] : v) {
        auto it = w.find(k);
        if (it == w.end()) {
            w.emplace(k, -a * x);
        } else {
            it->second -= a * x;
            if (it->second == 0) w.erase(it);
        }
    }
}

}  // namespace

void SpanBasis::reduce(SparseVec& w, SparseVec* comb) const {
    auto it = w.begin();
    while (it != w.end()) {
        const std::size_t key = it->first;
        auto row = rows_.find(key);
        if (row == rows_.end()) {
            ++it;
            continue;
        }
        const Rational a = it->second;
        axpy(w, row->second.v, a);
        if (comb != nullptr) axpy(*comb, row->second.comb, a);
        it = w.upper_bound(key);
    }
}

bool SpanBasis::add(const SparseVec& v, std::size_t label) {
    SparseVec w = v;
    SparseVec comb{{label, Rational(1)}};
    reduce(w, &comb);
    if (w.empty()) return false;
    const std::size_t pivot = w.begin()->first;
    const Rational inv = 1 / w.begin()->second;
    for (auto& [k, x] : w) x *= inv;
    for (auto& [k, x] : comb) x *= inv;
    rows_.emplace(pivot, Row{std::move(w), std::move(comb)});
    return true;
}

std::optional<SparseVec> SpanBasis::express(const SparseVec& target) const {
    SparseVec w = target;
    SparseVec comb;
    reduce(w, &comb);
    if (!w.empty()) return std::nullopt;
    // reduce subtracted the combination; flip sign to express the target.
    for (auto& [k, x] : comb) x = -x;
    return comb;
}

bool SpanBasis::contains(const SparseVec& target) const {
    SparseVec w = target;
    reduce(w, nullptr);
    return w.empty();
}

}  // namespace fident
