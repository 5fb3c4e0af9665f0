#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "suslov/constants.hpp"
#include "suslov/errors.hpp"
#include "suslov/model3.hpp"

using namespace suslov;

namespace {

const Inertia3 kDemo{4.0, 1.0, -0.5, -0.3};  // heavily asymmetric body, step 0.2 territory

double rel(double a, double b) {
    return std::abs(a - b) / std::max({1.0e-300, std::abs(a), std::abs(b)});
}

struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(unsigned long seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // Generic non-degenerate sample; redraws while the step denominator is
    // small (the map certificate is meaningless next to a pole).
    void draw(Inertia3& in, BodyOmega& o, StepSize& e) {
        for (;;) {
            in = {log_uniform(0.1, 10.0), log_uniform(0.1, 10.0),
                  uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
            o = {uniform(-2.0, 2.0), uniform(-2.0, 2.0)};
            e = {uniform(0.01, 0.3)};
            if (in.is_degenerate()) continue;
            if (std::abs(delta(o, in, e)) < 1e-3) continue;
            const double den = 2.0 * in.I1 * in.I2 - e.epsilon * to_planar(o, in).y
                             + e.epsilon * e.epsilon * to_planar(o, in).x * to_planar(o, in).x;
            if (std::abs(den) < 1e-3 * 2.0 * in.I1 * in.I2) continue;
            return;
        }
    }
};

}  // namespace

TEST_CASE("step determinant: trivial values") {
    CHECK(delta({0.0, 0.0}, kDemo, {0.2}) == 1.0);
    CHECK(delta({1.3, -0.7}, Inertia3{2.0, 5.0, 0.0, 0.0}, {0.4}) == 1.0);
}

TEST_CASE("one step against frozen extended-precision values") {
    // 50-digit evaluation of the map at omega = (1, 1), step 0.2:
    //   omega~ = (1.03605368864504751641..., 0.84010972861761536200...)
    //   Delta  = 1.0207, F = 0.31200079872204472843...
    const BodyOmega r = hk_step({1.0, 1.0}, kDemo, {0.2});
    CHECK(rel(r.omega1, 1.0360536886450475) <= 1e-14);
    CHECK(rel(r.omega2, 0.8401097286176154) <= 1e-14);
    CHECK(rel(delta({1.0, 1.0}, kDemo, {0.2}), 1.0207) <= 1e-14);
    CHECK(rel(first_integral({1.0, 1.0}, kDemo, {0.2}), 0.31200079872204473) <= 1e-14);
}

TEST_CASE("first integral is conserved step by step") {
    Sampler s(11);
    Inertia3 in;
    BodyOmega o;
    StepSize e;
    for (int i = 0; i < 500; ++i) {
        s.draw(in, o, e);
        const double before = first_integral(o, in, e);
        const double after = first_integral(hk_step(o, in, e), in, e);
        CHECK(std::abs(after - before) <= kConsTolStep * std::max(1.0, std::abs(before)));
    }
}

TEST_CASE("first integral drift over a long run") {
    BodyOmega o{1.0, 1.0};
    const StepSize e{0.2};
    const double f0 = first_integral(o, kDemo, e);
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        o = hk_step(o, kDemo, e);
        worst = std::max(worst, std::abs(first_integral(o, kDemo, e) - f0));
    }
    CHECK(worst / std::abs(f0) <= kConsTolRun);
}

TEST_CASE("the line I13 w1 + I23 w2 = 0 is pointwise fixed") {
    // (0.3, -0.5) lies on the line exactly, products round identically.
    CHECK(constraint_residual({0.3, -0.5}, kDemo) == 0.0);
    const BodyOmega r = hk_step({0.3, -0.5}, kDemo, {0.2});
    CHECK(std::abs(r.omega1 - 0.3) <= 1e-14);
    CHECK(std::abs(r.omega2 - (-0.5)) <= 1e-14);

    Sampler s(23);
    for (int i = 0; i < 500; ++i) {
        Inertia3 in{s.log_uniform(0.2, 5.0), s.log_uniform(0.2, 5.0),
                    (s.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * s.uniform(0.05, 1.0),
                    (s.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * s.uniform(0.05, 1.0)};
        const double t = s.uniform(0.2, 2.0) * (s.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
        const BodyOmega on_line{t * -in.I23, t * in.I13};
        const StepSize e{s.uniform(0.01, 0.3)};
        if (std::abs(delta(on_line, in, e)) < 0.01) continue;
        const BodyOmega out = hk_step(on_line, in, e);
        CHECK(std::abs(out.omega1 - on_line.omega1) <= 1e-14);
        CHECK(std::abs(out.omega2 - on_line.omega2) <= 1e-14);
    }
}

TEST_CASE("reversibility: a negative step undoes a positive one") {
    Sampler s(37);
    Inertia3 in;
    BodyOmega o;
    StepSize e;
    for (int i = 0; i < 500; ++i) {
        s.draw(in, o, e);
        BodyOmega fwd;
        try {
            fwd = hk_step(o, in, e);
            if (std::abs(delta(fwd, in, {-e.epsilon})) < 1e-3) continue;
        } catch (const DegenerateStep&) {
            continue;
        }
        const BodyOmega back = hk_step(fwd, in, {-e.epsilon});
        const double scale = std::max({1.0, std::abs(o.omega1), std::abs(o.omega2)});
        CHECK(std::abs(back.omega1 - o.omega1) <= 1e-12 * scale);
        CHECK(std::abs(back.omega2 - o.omega2) <= 1e-12 * scale);
    }
}

TEST_CASE("pole detection") {
    // Delta vanishes exactly here: (1 + s/2)(1 + s/2) - s^2/4 = 1 + s at s = -1.
    const Inertia3 in{1.0, 1.0, 1.0, -1.0};
    CHECK(delta({-1.0, -1.0}, in, {1.0}) == 0.0);
    CHECK_THROWS_AS(hk_step({-1.0, -1.0}, in, {1.0}), DegenerateStep);
}

TEST_CASE("degenerate inertia short-circuits to the identity") {
    const Inertia3 in{3.0, 7.0, 0.0, 0.0};
    const BodyOmega o{123.456, -9.87};
    const BodyOmega r = hk_step(o, in, {5.0});
    CHECK(r.omega1 == o.omega1);
    CHECK(r.omega2 == o.omega2);
}

TEST_CASE("first integral: origin and on-line values") {
    CHECK(first_integral({0.0, 0.0}, kDemo, {0.2}) == 0.0);
    // On the fixed line the denominator loses its eps term entirely.
    const BodyOmega on_line{0.3, -0.5};
    const double expect = (kDemo.I1 * 0.3 * 0.3 + kDemo.I2 * 0.5 * 0.5)
                        / (4.0 * kDemo.I1 * kDemo.I2);
    CHECK(rel(first_integral(on_line, kDemo, {0.2}), expect) <= 1e-15);
}

TEST_CASE("energy values and non-conservation") {
    CHECK(energy({1.0, 0.0}, Inertia3{4.0, 1.0, -0.5, -0.3}) == 2.0);
    CHECK(energy({0.0, 0.0}, kDemo) == 0.0);
    const double e0 = energy({1.0, 1.0}, kDemo);
    const double e1 = energy(hk_step({1.0, 1.0}, kDemo, {0.2}), kDemo);
    CHECK(std::abs(e1 - e0) > 1e-8);  // the discrete flow does not conserve energy
}

TEST_CASE("plane coordinates: worked example and round trips") {
    const PlanarState p = to_planar({1.0, 2.0}, kDemo);
    CHECK(rel(p.x, -1.1) <= 1e-15);
    CHECK(rel(p.y, -0.2) <= 1e-15);

    Sampler s(41);
    Inertia3 in;
    BodyOmega o;
    StepSize e;
    for (int i = 0; i < 500; ++i) {
        s.draw(in, o, e);
        const BodyOmega back = from_planar(to_planar(o, in), in);
        const double scale = std::max({1.0, std::abs(o.omega1), std::abs(o.omega2)});
        CHECK(std::abs(back.omega1 - o.omega1) <= 1e-13 * scale);
        CHECK(std::abs(back.omega2 - o.omega2) <= 1e-13 * scale);
    }
    CHECK_THROWS_AS(from_planar({1.0, 1.0}, Inertia3{1.0, 1.0, 0.0, 0.0}), DegenerateInertia);
}

TEST_CASE("the coordinate change has the advertised determinant") {
    Sampler s(43);
    for (int i = 0; i < 200; ++i) {
        const Inertia3 in{s.log_uniform(0.1, 10.0), s.log_uniform(0.1, 10.0),
                          s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0)};
        const PlanarState c1 = to_planar({1.0, 0.0}, in);
        const PlanarState c2 = to_planar({0.0, 1.0}, in);
        const double det = c1.x * c2.y - c2.x * c1.y;
        CHECK(rel(det, in.planar_jacobian()) <= 1e-13);
    }
}

TEST_CASE("planar map: the axis x = 0 is fixed exactly") {
    const PlanarState p{0.0, -1.7};
    const PlanarState r = planar_step(p, kDemo, {0.2});
    CHECK(r.x == 0.0);
    CHECK(r.y == p.y);
}

TEST_CASE("planar map pole") {
    // denominator 2 I1 I2 - eps y + eps^2 x^2 vanishes exactly
    CHECK_THROWS_AS(planar_step({0.0, 2.0}, Inertia3{1.0, 1.0, 0.1, 0.1}, {1.0}),
                    DegenerateStep);
}

TEST_CASE("the planar map is the step map seen through the coordinate change") {
    Sampler s(53);
    Inertia3 in;
    BodyOmega o;
    StepSize e;
    for (int i = 0; i < 1000; ++i) {
        s.draw(in, o, e);
        const PlanarState via_body = to_planar(hk_step(o, in, e), in);
        const PlanarState via_plane = planar_step(to_planar(o, in), in, e);
        const double scale = std::max({1.0, std::abs(via_body.x), std::abs(via_body.y)});
        CHECK(std::abs(via_body.x - via_plane.x) <= 1e-12 * scale);
        CHECK(std::abs(via_body.y - via_plane.y) <= 1e-12 * scale);
    }
}

TEST_CASE("planar integral is conserved and is the body integral rescaled") {
    Sampler s(59);
    Inertia3 in;
    BodyOmega o;
    StepSize e;
    for (int i = 0; i < 500; ++i) {
        s.draw(in, o, e);
        const PlanarState p = to_planar(o, in);
        const double before = first_integral_planar(p, in, e);
        const double after = first_integral_planar(planar_step(p, in, e), in, e);
        CHECK(std::abs(after - before) <= kConsTolStep * std::max(1.0, std::abs(before)));

        // The two integrals differ by the constant |planar jacobian|.
        const double j = in.I13 * in.I13 * in.I2 + in.I23 * in.I23 * in.I1;
        CHECK(rel(before, j * first_integral(o, in, e)) <= 1e-13);
    }
}

TEST_CASE("small steps recover the continuous equations") {
    // The one-sided divided difference is first order in eps, with error
    // proportional to |omega|; small states make the stated bound honest.
    Sampler s(61);
    const StepSize e{1e-4};
    for (int i = 0; i < 200; ++i) {
        const Inertia3 in{s.log_uniform(0.5, 3.0), s.log_uniform(0.5, 3.0),
                          (s.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * s.uniform(0.1, 1.0),
                          (s.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * s.uniform(0.1, 1.0)};
        const double r = s.log_uniform(1e-3, 5e-3);
        const double a = s.uniform(0.0, 6.283185307179586);
        const BodyOmega o{r * std::cos(a), r * std::sin(a)};
        const BodyOmega next = hk_step(o, in, e);
        const double d1 = (next.omega1 - o.omega1) / e.epsilon;
        const double d2 = (next.omega2 - o.omega2) / e.epsilon;
        // continuous right-hand side, written out locally
        const double f1 = (-in.I13 * o.omega1 * o.omega2 - in.I23 * o.omega2 * o.omega2) / in.I1;
        const double f2 = (in.I13 * o.omega1 * o.omega1 + in.I23 * o.omega1 * o.omega2) / in.I2;
        const double fn = std::max(std::abs(f1), std::abs(f2));
        if (fn < 1e-2 * r * r) continue;  // too close to the equilibrium line
        CHECK(std::hypot(d1 - f1, d2 - f2) <= 1e-6 * std::hypot(f1, f2));
    }
}

TEST_CASE("divided-difference error shrinks linearly in the step") {
    const BodyOmega o{1.0, 1.0};
    auto err = [&](double eps) {
        const BodyOmega next = hk_step(o, kDemo, {eps});
        const double d1 = (next.omega1 - o.omega1) / eps;
        const double d2 = (next.omega2 - o.omega2) / eps;
        const double f1 = (-kDemo.I13 * o.omega1 * o.omega2
                           - kDemo.I23 * o.omega2 * o.omega2) / kDemo.I1;
        const double f2 = (kDemo.I13 * o.omega1 * o.omega1
                           + kDemo.I23 * o.omega1 * o.omega2) / kDemo.I2;
        return std::hypot(d1 - f1, d2 - f2);
    };
    const double ratio = err(1e-3) / err(5e-4);
    CHECK(ratio >= 1.7);
    CHECK(ratio <= 2.3);
}

TEST_CASE("trajectories decay onto the steady-state line") {
    BodyOmega o{1.0, 1.0};
    const StepSize e{0.2};
    double prev = std::abs(constraint_residual(o, kDemo));
    bool monotone = true;
    double floor_ceiling = 0.0;  // once at rounding noise, only confinement is checkable
    for (int n = 0; n < 2000; ++n) {
        o = hk_step(o, kDemo, e);
        const double cur = std::abs(constraint_residual(o, kDemo));
        if (prev > 1e-13 && cur > prev) monotone = false;
        if (prev <= 1e-13) floor_ceiling = std::max(floor_ceiling, cur);
        prev = cur;
    }
    CHECK(monotone);
    CHECK(floor_ceiling < 1e-13);
    CHECK(prev < 1e-6);
}

TEST_CASE("trajectory samples carry consistent derived fields") {
    const TrajectorySample r = make_sample(3, 0.5, {1.0, 2.0}, kDemo, {0.2});
    CHECK(r.n == 3);
    CHECK(r.t == 0.5 + 3 * 0.2);
    CHECK(r.planar.x == to_planar({1.0, 2.0}, kDemo).x);
    CHECK(r.F == first_integral({1.0, 2.0}, kDemo, {0.2}));
    CHECK(r.energy == energy({1.0, 2.0}, kDemo));
    CHECK(r.constraint == constraint_residual({1.0, 2.0}, kDemo));
}

TEST_CASE("inertia validation") {
    CHECK_THROWS_AS(validate(Inertia3{-1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(Inertia3{1.0, 0.0, 0.0, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(validate(kDemo));
}
