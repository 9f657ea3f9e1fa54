#include "doctest.h"

#include "fmdkit/epcheck.hpp"
#include "fmdkit/fixtures.hpp"
#include "fmdkit/fmd.hpp"

using namespace fmd;

namespace {

double max_sample_err(const Signal& a, const Signal& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Signal component_sum(const std::vector<Signal>& cs) {
    Signal s = cs[0];
    for (std::size_t i = 1; i < cs.size(); ++i) s = s + cs[i];
    return s;
}

double reconstruction_error(const Signal& x, const DecompositionResult& res) {
    return max_sample_err(component_sum(res.components), x) / std::max(x.max_abs(), 1e-300);
}

// telescoping residual |<c_i, sum_{l>i} c_l>| normalized, worst index
double max_telescoping_residual(const std::vector<Signal>& cs) {
    double worst = 0.0;
    Signal tail = cs.back();
    for (std::size_t i = cs.size() - 1; i-- > 0;) {
        const double denom = norm(cs[i]) * norm(tail);
        if (denom > 0.0) worst = std::max(worst, std::abs(inner_product(cs[i], tail)) / denom);
        if (i > 0) tail = tail + cs[i];
    }
    return worst;
}

}  // namespace

TEST_CASE("residue-side split, worked single stage") {
    // x = y + r with y = [2,0], r = [1,1]: alpha = <y,r>/<r,r> = 1,
    // head = [1,-1], tail = [2,2], energies 10 = 2 + 8
    const Signal y = Signal::real_1d({2, 0});
    const Signal r = Signal::real_1d({1, 1});
    const OrthogonalSplit s = split_residue_side(y, r);
    CHECK(s.alpha == 1.0);
    CHECK(s.head.samples() == Signal::real_1d({1, -1}).samples());
    CHECK(s.tail.samples() == Signal::real_1d({2, 2}).samples());
    CHECK(inner_product(s.head, s.tail) == cplx(0.0, 0.0));
    CHECK(energy(y + r) == 10.0);
    CHECK(energy(s.head) + energy(s.tail) == 10.0);
}

TEST_CASE("filter-side split, worked single stage") {
    const Signal y = Signal::real_1d({1, 1});
    const Signal r = Signal::real_1d({2, 0});
    const OrthogonalSplit s = split_filter_side(y, r);
    CHECK(s.alpha == 1.0);
    CHECK(s.head.samples() == Signal::real_1d({2, 2}).samples());
    CHECK(s.tail.samples() == Signal::real_1d({1, -1}).samples());
    CHECK(inner_product(s.head, s.tail) == cplx(0.0, 0.0));
    CHECK(energy(s.head) + energy(s.tail) == 10.0);
}

TEST_CASE("orthogonal filter output reduces both splits to the plain ones") {
    const Signal y = Signal::real_1d({1, 1, 0});
    const Signal r = Signal::real_1d({0, 0, 2});
    const OrthogonalSplit a = split_residue_side(y, r);
    CHECK(a.alpha == 0.0);
    CHECK(a.head.samples() == y.samples());
    CHECK(a.tail.samples() == r.samples());
    const OrthogonalSplit b = split_filter_side(y, r);
    CHECK(b.alpha == 0.0);
    CHECK(b.head.samples() == y.samples());
    CHECK(b.tail.samples() == r.samples());
}

TEST_CASE("split error paths") {
    const Signal y = Signal::real_1d({1, 1});
    const Signal zero = Signal::real_1d({0, 0});
    CHECK_THROWS_AS(split_residue_side(y, zero), std::domain_error);
    // filter side degrades gracefully instead
    const OrthogonalSplit s = split_filter_side(zero, y);
    CHECK(s.alpha == 0.0);
    CHECK(energy(s.head) == 0.0);
    CHECK(s.tail.samples() == y.samples());
}

TEST_CASE("micro decompositions through the full driver") {
    const Signal x = Signal::real_1d({3, 1});
    const StageFilter give_y20 = [](const Signal&, std::size_t) {
        return Signal::real_1d({2, 0});
    };
    const DecompositionResult r2 = decompose_with(x, Algorithm::linoep_residue_side, give_y20, 1);
    REQUIRE(r2.components.size() == 2);
    CHECK(r2.alphas == std::vector<double>{1.0});
    CHECK(r2.components[0].samples() == Signal::real_1d({1, -1}).samples());
    CHECK(r2.components[1].samples() == Signal::real_1d({2, 2}).samples());
    CHECK(r2.ledger.pee_percent == 0.0);

    const StageFilter give_y11 = [](const Signal&, std::size_t) {
        return Signal::real_1d({1, 1});
    };
    const DecompositionResult r3 = decompose_with(x, Algorithm::linoep_filter_side, give_y11, 1);
    REQUIRE(r3.components.size() == 2);
    CHECK(r3.alphas == std::vector<double>{1.0});
    CHECK(r3.components[0].samples() == Signal::real_1d({2, 2}).samples());
    CHECK(r3.components[1].samples() == Signal::real_1d({1, -1}).samples());
    CHECK(r3.ledger.pee_percent == 0.0);
}

TEST_CASE("plain decomposition with an effectively identity filter") {
    const Signal x = fixtures::random_uniform_1d(64, 12);
    const FilterSpec wide = FilterSpec::gaussian({1e9, 1e9, 1e9});
    const DecompositionResult res = decompose_plain(x, wide, 3);
    REQUIRE(res.components.size() == 4);
    CHECK(max_sample_err(res.components[0], x) <= 1e-9);
    for (std::size_t i = 1; i < 4; ++i) CHECK(norm(res.components[i]) <= 1e-8 * norm(x));
    CHECK(reconstruction_error(x, res) <= 1e-9);
}

TEST_CASE("single-stage ideal filter splits two tones without energy leakage") {
    const std::size_t n = 64;
    const Signal low = fixtures::tone(n, 3.0);
    const Signal high = fixtures::tone(n, 20.0);
    const DecompositionResult res =
        decompose_plain(low + high, FilterSpec::ideal({10.0 / 64.0}), 1);
    REQUIRE(res.components.size() == 2);
    CHECK(max_sample_err(res.components[0], low) <= 1e-10);
    CHECK(max_sample_err(res.components[1], high) <= 1e-10);
    CHECK(std::abs(res.ledger.pee_percent) <= 1e-9);
    CHECK(orthogonal_at(res.components[0], res.components[1]));
}

TEST_CASE("reconstruction holds for all algorithms and filter kinds") {
    const Signal x1 = fixtures::random_uniform_1d(1024, 100);
    const Signal x2 = fixtures::random_image(64, 64, 101);
    for (Algorithm alg :
         {Algorithm::plain, Algorithm::linoep_residue_side, Algorithm::linoep_filter_side}) {
        for (const Signal* x : {&x1, &x2}) {
            const double sigma0 = default_sigma0(x->shape());
            const DecompositionResult g =
                decompose(*x, alg, FilterSpec::gaussian_halving(6, sigma0), 6);
            CHECK(reconstruction_error(*x, g) <= 1e-9);
            const DecompositionResult id =
                decompose(*x, alg, FilterSpec::ideal({0.3, 0.2, 0.1}), 3);
            CHECK(reconstruction_error(*x, id) <= 1e-9);
        }
        const DecompositionResult ma =
            decompose(x1, alg, FilterSpec::moving_average({9, 5, 3}), 3);
        CHECK(reconstruction_error(x1, ma) <= 1e-9);
    }
}

TEST_CASE("linoep structure: telescoping orthogonality, preserved energy, non-orthogonal pairs") {
    const Signal x = fixtures::random_uniform_1d(1024, 200);
    for (Algorithm alg : {Algorithm::linoep_residue_side, Algorithm::linoep_filter_side}) {
        const DecompositionResult res = decompose(x, alg, FilterSpec::gaussian_halving(6, 128.0), 6);
        CHECK(max_telescoping_residual(res.components) <= 1e-9);
        CHECK(std::abs(res.ledger.pee_percent) <= 1e-10);

        // the set is not pairwise orthogonal: some pair among the first n
        // components correlates
        double worst_pair = 0.0;
        for (std::size_t i = 0; i + 1 < res.components.size() - 1; ++i)
            for (std::size_t l = i + 1; l < res.components.size() - 1; ++l) {
                const double denom = norm(res.components[i]) * norm(res.components[l]);
                if (denom > 0.0)
                    worst_pair = std::max(
                        worst_pair, std::abs(inner_product(res.components[i], res.components[l])) / denom);
            }
        CHECK(worst_pair > 1e-9);
    }
}

TEST_CASE("plain decomposition is linear") {
    const Signal x1 = fixtures::random_uniform_1d(256, 300);
    const Signal x2 = fixtures::random_uniform_1d(256, 301);
    const FilterSpec spec = FilterSpec::gaussian_halving(4, 32.0);
    const DecompositionResult lhs = decompose_plain(2.0 * x1 + (-3.0) * x2, spec, 4);
    const DecompositionResult a = decompose_plain(x1, spec, 4);
    const DecompositionResult b = decompose_plain(x2, spec, 4);
    for (std::size_t i = 0; i < lhs.components.size(); ++i) {
        const Signal rhs = 2.0 * a.components[i] + (-3.0) * b.components[i];
        CHECK(max_sample_err(lhs.components[i], rhs) <= 1e-9 * std::max(1.0, rhs.max_abs()));
    }
}

TEST_CASE("gram-schmidt basics") {
    const std::vector<Signal> in = {Signal::real_1d({1, 0}), Signal::real_1d({1, 1})};
    const std::vector<Signal> out = gram_schmidt(in);
    CHECK(out[0].samples() == Signal::real_1d({1, 0}).samples());
    CHECK(out[1].samples() == Signal::real_1d({0, 1}).samples());

    const std::vector<Signal> ortho = {Signal::real_1d({1, 1}), Signal::real_1d({1, -1})};
    const std::vector<Signal> kept = gram_schmidt(ortho);
    CHECK(kept[0].samples() == ortho[0].samples());
    CHECK(kept[1].samples() == ortho[1].samples());

    CHECK_THROWS_WITH_AS(
        (void)gram_schmidt({Signal::real_1d({1, 1}), Signal::real_1d({2, 2})}),
        "gram_schmidt: linearly dependent input at index 2", std::invalid_argument);
}

TEST_CASE("gram-schmidt orthogonalizes plain gaussian components") {
    const Signal x = fixtures::random_uniform_1d(512, 400);
    const DecompositionResult res = decompose_plain(x, FilterSpec::gaussian_halving(5, 64.0), 5);
    const std::vector<Signal> us = gram_schmidt(res.components);
    for (std::size_t i = 0; i < us.size(); ++i)
        for (std::size_t j = i + 1; j < us.size(); ++j) CHECK(orthogonal_at(us[i], us[j]));

    // the output spans the components, so projecting x onto it rebuilds
    // the component sum
    Signal proj = Signal::zeros_like(x);
    for (const Signal& u : us) {
        const double coef = inner_product(x, u).real() / energy(u);
        proj = proj + coef * u;
    }
    CHECK(max_sample_err(proj, component_sum(res.components)) <= 1e-9 * std::max(1.0, x.max_abs()));
}

TEST_CASE("energy ledger assembly") {
    const Signal x = Signal::real_1d({2, 0});
    const EnergyLedger exact =
        build_ledger(x, {Signal::real_1d({1, -1}), Signal::real_1d({1, 1})});
    CHECK(exact.total_energy == 4.0);
    CHECK(exact.component_energies == std::vector<double>{2.0, 2.0});
    CHECK(exact.pee_percent == 0.0);

    const EnergyLedger redundant =
        build_ledger(x, {Signal::real_1d({1, 0}), Signal::real_1d({1, 0})});
    CHECK(redundant.component_energies == std::vector<double>{1.0, 1.0});
    CHECK(redundant.pee_percent == 50.0);

    CHECK_THROWS_AS(build_ledger(x, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_ledger(x, {Signal::real_1d({1, 2, 3})}), std::invalid_argument);
}

TEST_CASE("six-stage ledger has the expected table shape") {
    const Signal img = fixtures::random_image(32, 32, 500);
    const DecompositionResult res =
        decompose_linoep_filter_side(img, FilterSpec::gaussian_halving(6, 4.0), 6);
    CHECK(res.ledger.component_energies.size() == 7);
    CHECK(res.gram.size() == 7);
    CHECK(res.gram[0].size() == 7);
    CHECK(res.ledger.total_energy == energy(img));
}

TEST_CASE("early termination on zero residue") {
    const Signal x = fixtures::random_uniform_1d(32, 600);
    const StageFilter identity = [](const Signal& s, std::size_t) { return s; };
    const DecompositionResult res = decompose_with(x, Algorithm::linoep_residue_side, identity, 4);
    REQUIRE(res.components.size() == 1);
    CHECK(res.completed_stages == 0);
    CHECK(res.requested_stages == 4);
    CHECK(res.components[0].samples() == x.samples());
    CHECK(res.ledger.pee_percent == 0.0);
    CHECK(res.warnings.size() == 1);

    // mean extraction first, identity on the remainder: two components
    const StageFilter mean_then_identity = [](const Signal& s, std::size_t stage) {
        if (stage > 0) return s;
        const double mean = inner_product(s, Signal::real_1d(std::vector<double>(s.size(), 1.0)))
                                .real() / static_cast<double>(s.size());
        return Signal::real_1d(std::vector<double>(s.size(), mean));
    };
    const DecompositionResult two =
        decompose_with(x, Algorithm::linoep_residue_side, mean_then_identity, 4);
    REQUIRE(two.components.size() == 2);
    CHECK(two.completed_stages == 1);
    CHECK(reconstruction_error(x, two) <= 1e-12);
    CHECK(std::abs(two.ledger.pee_percent) <= 1e-10);
}

TEST_CASE("filter-side survives an annihilating stage") {
    const Signal x = fixtures::random_uniform_1d(32, 700);
    const StageFilter kill_first = [](const Signal& s, std::size_t stage) {
        if (stage == 0) return Signal::zeros_like(s);
        return apply_zero_phase(s, gaussian_response(s.shape(), 4.0));
    };
    const DecompositionResult res = decompose_with(x, Algorithm::linoep_filter_side, kill_first, 3);
    REQUIRE(res.components.size() == 4);
    CHECK(energy(res.components[0]) == 0.0);
    CHECK(res.alphas[0] == 0.0);
    CHECK(res.warnings.size() == 1);
    CHECK(reconstruction_error(x, res) <= 1e-9);
    CHECK(std::abs(res.ledger.pee_percent) <= 1e-10);
}

TEST_CASE("zero input yields a single zero component") {
    const Signal zero = Signal::real_1d(std::vector<double>(16, 0.0));
    for (Algorithm alg :
         {Algorithm::plain, Algorithm::linoep_residue_side, Algorithm::linoep_filter_side}) {
        const DecompositionResult res = decompose(zero, alg, FilterSpec::gaussian_halving(3, 2.0), 3);
        REQUIRE(res.components.size() == 1);
        CHECK(energy(res.components[0]) == 0.0);
        CHECK(res.ledger.pee_percent == 0.0);
        CHECK(res.ledger.total_energy == 0.0);
    }
}

TEST_CASE("schedule length must match the stage count") {
    const Signal x = fixtures::random_uniform_1d(16, 800);
    CHECK_THROWS_AS(decompose_plain(x, FilterSpec::gaussian_halving(3, 2.0), 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(decompose_with(x, Algorithm::plain,
                                   [](const Signal& s, std::size_t) { return s; }, 0),
                    std::invalid_argument);
}

TEST_CASE("single-row images decompose like any 2D input") {
    const Signal strip = fixtures::random_image(1, 32, 901);
    for (Algorithm alg :
         {Algorithm::plain, Algorithm::linoep_residue_side, Algorithm::linoep_filter_side}) {
        const DecompositionResult res = decompose(strip, alg, FilterSpec::gaussian_halving(3, 4.0), 3);
        CHECK(reconstruction_error(strip, res) <= 1e-9);
        if (alg != Algorithm::plain) CHECK(std::abs(res.ledger.pee_percent) <= 1e-10);
    }
}

TEST_CASE("complex input keeps the split energy identity") {
    std::vector<cplx> xs(16), ys(16);
    std::mt19937_64 rng(900);
    for (std::size_t i = 0; i < 16; ++i) {
        xs[i] = cplx(2.0 * fixtures::uniform01(rng) - 1.0, 2.0 * fixtures::uniform01(rng) - 1.0);
        ys[i] = cplx(2.0 * fixtures::uniform01(rng) - 1.0, 2.0 * fixtures::uniform01(rng) - 1.0);
    }
    const Signal x = Signal::complex_1d(xs);
    const Signal y = Signal::complex_1d(ys);
    const Signal r = x - y;
    for (const OrthogonalSplit& s : {split_residue_side(y, r), split_filter_side(y, r)}) {
        // alpha is chosen so the real cross term vanishes and energies add
        CHECK(std::abs(inner_product(s.head, s.tail).real()) <= 1e-12 * energy(x));
        CHECK(energy(s.head) + energy(s.tail) == doctest::Approx(energy(x)).epsilon(1e-12));
        CHECK(max_sample_err(s.head + s.tail, x) <= 1e-12);
    }
}
