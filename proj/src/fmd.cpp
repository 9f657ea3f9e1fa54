#include "fmdkit/fmd.hpp"

#include <stdexcept>

namespace fmd {

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::plain: return "plain";
        case Algorithm::linoep_residue_side: return "linoep_residue_side";
        case Algorithm::linoep_filter_side: return "linoep_filter_side";
    }
    return "?";
}

OrthogonalSplit split_residue_side(const Signal& y, const Signal& r) {
    if (!y.same_shape(r)) throw std::invalid_argument("split_residue_side: shape mismatch");
    const double rr = energy(r);
    if (rr == 0.0) throw std::domain_error("split_residue_side: zero residue");
    // Real part of <y,r>: the split only needs Re<head,tail> = 0 for the
    // energies to add, and for real signals this is the exact quotient.
    const double alpha = inner_product(y, r).real() / rr;
    return OrthogonalSplit{y - alpha * r, (1.0 + alpha) * r, alpha};
}

OrthogonalSplit split_filter_side(const Signal& y, const Signal& r) {
    if (!y.same_shape(r)) throw std::invalid_argument("split_filter_side: shape mismatch");
    const double yy = energy(y);
    if (yy == 0.0) return OrthogonalSplit{Signal::zeros_like(y), r, 0.0};
    const double alpha = inner_product(y, r).real() / yy;
    return OrthogonalSplit{(1.0 + alpha) * y, r - alpha * y, alpha};
}

namespace {

DecompositionResult degenerate_zero_input(const Signal& x, Algorithm alg, std::size_t stages) {
    DecompositionResult res;
    res.algorithm = alg;
    res.requested_stages = stages;
    res.completed_stages = 0;
    res.components.push_back(Signal::zeros_like(x));
    res.gram = gram_matrix(res.components);
    res.ledger = build_ledger(x, res.components);
    res.warnings.push_back("input has zero energy; emitted a single zero component");
    return res;
}

}  // namespace

DecompositionResult decompose_with(const Signal& x, Algorithm alg, const StageFilter& filter,
                                   std::size_t stages) {
    if (stages < 1) throw std::invalid_argument("decompose: stage count must be >= 1");
    if (energy(x) == 0.0) return degenerate_zero_input(x, alg, stages);

    DecompositionResult res;
    res.algorithm = alg;
    res.requested_stages = stages;

    Signal cur = x;
    bool terminated_early = false;
    for (std::size_t i = 0; i < stages; ++i) {
        Signal y = filter(cur, i);
        if (!y.same_shape(cur))
            throw std::invalid_argument("decompose: stage filter changed the signal shape");
        Signal r = cur - y;
        switch (alg) {
            case Algorithm::plain:
                res.components.push_back(std::move(y));
                cur = std::move(r);
                break;
            case Algorithm::linoep_residue_side: {
                if (energy(r) == 0.0) {
                    // Nothing left to split; the filter output is the final
                    // component and no further stages are padded.
                    res.components.push_back(std::move(y));
                    res.warnings.push_back("stage " + std::to_string(i + 1) +
                                           ": zero residue, terminated early");
                    terminated_early = true;
                } else {
                    OrthogonalSplit s = split_residue_side(y, r);
                    res.components.push_back(std::move(s.head));
                    res.alphas.push_back(s.alpha);
                    cur = std::move(s.tail);
                }
                break;
            }
            case Algorithm::linoep_filter_side: {
                if (energy(y) == 0.0)
                    res.warnings.push_back("stage " + std::to_string(i + 1) +
                                           ": filter annihilated the stage input, emitting a zero component");
                OrthogonalSplit s = split_filter_side(y, r);
                res.components.push_back(std::move(s.head));
                res.alphas.push_back(s.alpha);
                cur = std::move(s.tail);
                break;
            }
        }
        if (terminated_early) break;
    }
    if (!terminated_early) res.components.push_back(cur);

    res.completed_stages = res.components.size() - 1;
    res.gram = gram_matrix(res.components);
    res.ledger = build_ledger(x, res.components);
    return res;
}

DecompositionResult decompose(const Signal& x, Algorithm alg, const FilterSpec& filter,
                              std::size_t stages) {
    if (filter.stages() != stages)
        throw std::invalid_argument("decompose: filter schedule length (" +
                                    std::to_string(filter.stages()) +
                                    ") must equal the stage count (" + std::to_string(stages) + ")");
    return decompose_with(
        x, alg, [&filter](const Signal& s, std::size_t i) { return filter.apply_stage(s, i); },
        stages);
}

DecompositionResult decompose_plain(const Signal& x, const FilterSpec& filter, std::size_t stages) {
    return decompose(x, Algorithm::plain, filter, stages);
}

DecompositionResult decompose_linoep_residue_side(const Signal& x, const FilterSpec& filter,
                                                  std::size_t stages) {
    return decompose(x, Algorithm::linoep_residue_side, filter, stages);
}

DecompositionResult decompose_linoep_filter_side(const Signal& x, const FilterSpec& filter,
                                                 std::size_t stages) {
    return decompose(x, Algorithm::linoep_filter_side, filter, stages);
}

std::vector<Signal> gram_schmidt(const std::vector<Signal>& vs) {
    if (vs.empty()) throw std::invalid_argument("gram_schmidt: empty input");
    for (const Signal& v : vs)
        if (!v.same_shape(vs.front()))
            throw std::invalid_argument("gram_schmidt: shape mismatch");

    std::vector<Signal> us;
    std::vector<double> uu;  // <u_j, u_j>, cached
    us.reserve(vs.size());
    for (std::size_t k = 0; k < vs.size(); ++k) {
        Signal u = vs[k];
        for (std::size_t j = 0; j < us.size(); ++j) {
            const cplx coef = inner_product(vs[k], us[j]) / uu[j];
            u = u - coef * us[j];
        }
        if (norm(u) <= 1e-12 * norm(vs[k]))
            throw std::invalid_argument("gram_schmidt: linearly dependent input at index " +
                                        std::to_string(k + 1));
        uu.push_back(energy(u));
        us.push_back(std::move(u));
    }
    return us;
}

EnergyLedger build_ledger(const Signal& x, const std::vector<Signal>& components) {
    if (components.empty()) throw std::invalid_argument("build_ledger: no components");
    for (const Signal& c : components)
        if (!c.same_shape(x)) throw std::invalid_argument("build_ledger: shape mismatch");

    EnergyLedger ledger;
    ledger.total_energy = energy(x);
    ledger.component_energies.reserve(components.size());
    for (const Signal& c : components) ledger.component_energies.push_back(energy(c));
    ledger.pee_percent =
        ledger.total_energy > 0.0 ? pee(ledger.total_energy, ledger.component_energies) : 0.0;
    return ledger;
}

std::vector<std::vector<cplx>> gram_matrix(const std::vector<Signal>& components) {
    const std::size_t k = components.size();
    std::vector<std::vector<cplx>> g(k, std::vector<cplx>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            g[i][j] = inner_product(components[i], components[j]);
            if (j != i) g[j][i] = std::conj(g[i][j]);
        }
    }
    return g;
}

std::function<std::vector<Signal>(const Signal&)> decomposition_system(Algorithm alg,
                                                                       FilterSpec filter) {
    return [alg, filter = std::move(filter)](const Signal& x) {
        return decompose(x, alg, filter, filter.stages()).components;
    };
}

}  // namespace fmd
