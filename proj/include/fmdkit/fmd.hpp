// Iterative filter-mode decomposition. Three variants:
//
//   plain               y_i = FILTER_i(x_i), residue carried forward; the
//                       components generally leak energy in the ledger.
//   linoep_residue_side each stage re-splits (y_i, r_i) into an orthogonal
//                       pair (c_i, (1+a_i) r_i) with a_i = <y_i,r_i>/<r_i,r_i>,
//                       carrying the scaled residue forward.
//   linoep_filter_side  same idea from the filter side: v_i = (1+a_i) y_i,
//                       a_i = <y_i,r_i>/<y_i,y_i>, remainder r_i - a_i y_i.
//
// The two linoep variants emit components where each one is orthogonal to
// the sum of all later ones, so squared norms add up to the input energy
// even though the set is not pairwise orthogonal.
#pragma once

#include <functional>
#include <string>

#include "fmdkit/filters.hpp"
#include "fmdkit/signal.hpp"

namespace fmd {

enum class Algorithm { plain = 1, linoep_residue_side = 2, linoep_filter_side = 3 };

const char* to_string(Algorithm a);

struct DecompositionResult {
    Algorithm algorithm = Algorithm::plain;
    std::vector<Signal> components;   // completed_stages + 1 entries
    std::vector<double> alphas;       // empty for plain
    EnergyLedger ledger;
    std::vector<std::vector<cplx>> gram;  // pairwise inner products of components
    std::size_t requested_stages = 0;
    std::size_t completed_stages = 0;
    std::vector<std::string> warnings;
};

// Filter applied at a given stage; must return a signal of the same shape.
using StageFilter = std::function<Signal(const Signal&, std::size_t stage)>;

DecompositionResult decompose(const Signal& x, Algorithm alg, const FilterSpec& filter,
                              std::size_t stages);
DecompositionResult decompose_with(const Signal& x, Algorithm alg, const StageFilter& filter,
                                   std::size_t stages);

DecompositionResult decompose_plain(const Signal& x, const FilterSpec& filter, std::size_t stages);
DecompositionResult decompose_linoep_residue_side(const Signal& x, const FilterSpec& filter,
                                                  std::size_t stages);
DecompositionResult decompose_linoep_filter_side(const Signal& x, const FilterSpec& filter,
                                                 std::size_t stages);

// One orthogonalizing split. head + tail == y + r and <head, tail> == 0 (in
// the real part), hence |y + r|^2 == |head|^2 + |tail|^2.
struct OrthogonalSplit {
    Signal head;
    Signal tail;
    double alpha;
};

// head = y - alpha*r, tail = (1+alpha)*r. Throws std::domain_error when
// <r,r> == 0; the decomposition loop terminates early in that case instead.
OrthogonalSplit split_residue_side(const Signal& y, const Signal& r);
// head = (1+alpha)*y, tail = r - alpha*y. <y,y> == 0 degenerates to
// alpha = 0, head = 0, tail = r.
OrthogonalSplit split_filter_side(const Signal& y, const Signal& r);

// Classical Gram-Schmidt without normalization. Throws when an input vector
// is (numerically) dependent on its predecessors, naming the 1-based index.
std::vector<Signal> gram_schmidt(const std::vector<Signal>& vs);

EnergyLedger build_ledger(const Signal& x, const std::vector<Signal>& components);

std::vector<std::vector<cplx>> gram_matrix(const std::vector<Signal>& components);

// Wraps (algorithm, filter) as a black-box system mapping a signal to its
// ordered component list, for the probes in epcheck.
std::function<std::vector<Signal>(const Signal&)> decomposition_system(Algorithm alg,
                                                                       FilterSpec filter);

}  // namespace fmd
