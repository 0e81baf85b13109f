#include "mfo/bench.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mfo {

std::vector<TracePoint> truth_trace(const SearchResult& result, int L) {
    std::vector<TracePoint> trace;
    double best = kInf;
    for (const HistoryEntry& entry : result.history) {
        auto it = entry.record.outputs.find(L);
        if (it == entry.record.outputs.end()) continue;
        const auto& [f, c] = it->second;
        if (constraint_violation(c) != 0.0) continue;
        if (f < best) {
            best = f;
            trace.push_back({entry.cumulative_cost, best});
        }
    }
    return trace;
}

std::vector<int> last_indices(const SearchResult& result) {
    std::vector<int> out;
    for (const HistoryEntry& entry : result.history) out.push_back(entry.record.last_index);
    return out;
}

std::vector<Vec> trial_points(const SearchResult& result) {
    std::vector<Vec> out;
    for (const HistoryEntry& entry : result.history) out.push_back(entry.record.x);
    return out;
}

double best_value_at(const std::vector<TracePoint>& trace, double T) {
    double best = kInf;
    for (const TracePoint& tp : trace) {
        if (tp.T > T) break;
        best = tp.f;
    }
    return best;
}

bool tau_solved(const std::vector<TracePoint>& trace, double f_x0, double f_star, double tau,
                double T) {
    const double f_T = best_value_at(trace, T);
    if (std::isinf(f_T)) return false;
    if (f_x0 == f_star) return f_T == f_star;
    return (f_x0 - f_T) / (f_x0 - f_star) >= 1.0 - tau;
}

DataProfile data_profile(const std::vector<InstanceTraces>& instances, double tau,
                         std::vector<double> grid) {
    if (instances.empty()) throw std::invalid_argument("data_profile: no instances");
    std::set<std::string> algorithms;
    for (const InstanceTraces& inst : instances)
        for (const auto& [name, trace] : inst.by_algorithm) algorithms.insert(name);

    DataProfile profile;
    profile.grid = std::move(grid);

    // f_star per instance = best feasible value over every algorithm; an
    // instance where nothing was ever feasible is excluded and counted.
    std::vector<double> f_star(instances.size(), kInf);
    std::vector<char> usable(instances.size(), 0);
    int counted = 0;
    for (std::size_t k = 0; k < instances.size(); ++k) {
        for (const auto& [name, trace] : instances[k].by_algorithm)
            for (const TracePoint& tp : trace) f_star[k] = std::min(f_star[k], tp.f);
        usable[k] = !std::isinf(f_star[k]);
        if (usable[k])
            ++counted;
        else
            ++profile.degenerate_instances;
    }
    if (counted == 0) throw std::invalid_argument("data_profile: every instance is degenerate");

    for (const std::string& name : algorithms) {
        ProfileCurve curve;
        curve.algorithm = name;
        for (double T : profile.grid) {
            int solved = 0;
            for (std::size_t k = 0; k < instances.size(); ++k) {
                if (!usable[k]) continue;
                auto it = instances[k].by_algorithm.find(name);
                if (it == instances[k].by_algorithm.end()) continue;
                if (tau_solved(it->second, instances[k].f_x0, f_star[k], tau, T)) ++solved;
            }
            curve.fractions.push_back(double(solved) / double(counted));
        }
        profile.curves.push_back(std::move(curve));
    }
    return profile;
}

std::vector<double> default_grid(const std::vector<InstanceTraces>& instances, int points) {
    double max_T = 0.0;
    for (const InstanceTraces& inst : instances)
        for (const auto& [name, trace] : inst.by_algorithm)
            for (const TracePoint& tp : trace) max_T = std::max(max_T, tp.T);
    std::vector<double> grid;
    for (int k = 1; k <= points; ++k) grid.push_back(max_T * double(k) / double(points));
    return grid;
}

std::vector<double> fidelity_histogram(const std::vector<int>& indices, int L) {
    if (indices.empty()) throw std::invalid_argument("fidelity_histogram: no evaluations");
    std::vector<double> percent(L, 0.0);
    for (int i : indices) {
        if (i < 1 || i > L) throw std::out_of_range("fidelity_histogram: bad index");
        percent[i - 1] += 1.0;
    }
    for (double& p : percent) p *= 100.0 / double(indices.size());
    return percent;
}

SequenceComparison sequence_compare(const std::vector<Vec>& base, const std::vector<Vec>& variant) {
    SequenceComparison cmp;
    cmp.factor = base.empty() ? 1.0 : double(variant.size()) / double(base.size());
    const std::size_t common = std::min(base.size(), variant.size());
    std::size_t first = common;
    for (std::size_t k = 0; k < common; ++k)
        if (base[k] != variant[k]) {
            first = k;
            break;
        }
    cmp.differs = first < common || base.size() != variant.size();
    cmp.percent_before_difference =
        base.empty() ? 100.0 : (cmp.differs ? 100.0 * double(first) / double(base.size()) : 100.0);
    return cmp;
}

}  // namespace mfo
