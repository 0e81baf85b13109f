#include "mfo/core.hpp"

#include <algorithm>

namespace mfo {

FidelityLadder::FidelityLadder(std::vector<double> values, CostMode mode)
    : values_(std::move(values)), mode_(mode) {
    if (values_.empty()) throw std::invalid_argument("FidelityLadder: empty");
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!(values_[k] > 0.0 && values_[k] <= 1.0))
            throw std::invalid_argument("FidelityLadder: values must lie in (0,1]");
        if (k > 0 && !(values_[k] > values_[k - 1]))
            throw std::invalid_argument("FidelityLadder: values must be strictly increasing");
    }
    if (values_.back() != 1.0)
        throw std::invalid_argument("FidelityLadder: last value must equal 1");
}

EvalOutput MultiFidelityProblem::resume(const Vec&, int, int) const {
    throw std::logic_error("resume: problem has no intermediary outputs");
}

bool MultiFidelityProblem::in_bounds(const Vec& x) const {
    const Vec& lo = lower();
    const Vec& hi = upper();
    for (int k = 0; k < dimension(); ++k)
        if (x[k] < lo[k] || x[k] > hi[k]) return false;
    return true;
}

void AssignmentVector::validate(int L) const {
    for (int a : entries)
        if (a < 1 || a > L) throw std::invalid_argument("AssignmentVector: entry out of 1..L");
}

bool EvaluationRecord::has_full_ladder(int L) const {
    for (int i = 1; i <= L; ++i)
        if (!outputs.count(i)) return false;
    return true;
}

void Cache::append(EvaluationRecord record, int L, int m) {
    Entry e;
    e.lowest_rep.assign(m, 0);
    if (record.has_full_ladder(L)) {
        std::vector<double> col(L);
        for (int j = 1; j <= m; ++j) {
            for (int i = 1; i <= L; ++i) col[i - 1] = record.outputs.at(i).second[j - 1];
            for (int i = 1; i <= L; ++i) {
                if (is_representative(col, i)) {
                    e.lowest_rep[j - 1] = i;
                    break;
                }
            }
        }
        const Vec& truth = record.outputs.at(L).second;
        e.truth_feasible = std::all_of(truth.begin(), truth.end(),
                                       [](double v) { return v <= 0.0; });
    }
    e.record = std::move(record);
    entries_.push_back(std::move(e));
}

double constraint_violation(const Vec& c) {
    double h = 0.0;
    for (double v : c) {
        if (std::isinf(v) && v > 0) return kInf;
        if (v > 0.0) h += v * v;
    }
    return h;
}

double extreme_barrier(double f, const Vec& c, bool in_bounds) {
    if (!in_bounds) return kInf;
    for (double v : c)
        if (!(v <= 0.0)) return kInf;  // NaN and inf count as violated
    return f;
}

bool is_representative(const std::vector<double>& values_over_i, int at_index) {
    const int L = static_cast<int>(values_over_i.size());
    const bool truth_violated = !(values_over_i[L - 1] <= 0.0);
    for (int l = at_index; l <= L; ++l) {
        const bool violated = !(values_over_i[l - 1] <= 0.0);
        if (violated != truth_violated) return false;
    }
    return true;
}

}  // namespace mfo
