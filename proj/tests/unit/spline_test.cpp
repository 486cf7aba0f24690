#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "roampath/error.hpp"
#include "roampath/spline.hpp"

using namespace roampath;

namespace {

// Regression constant: route Catmull-Rom (t = 0.5) length, from 10^6- and
// 2*10^6-chord sums of an independent Hermite evaluator, Richardson-extrapolated.
constexpr double kRouteCatmullRomLength = 46004.603481155;

double rel_err(const Point3& got, const Point3& want) {
    return norm(got - want) / std::max(1.0, norm(want));
}

Point3 random_point(std::mt19937_64& gen, double scale = 100.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    return {d(gen), d(gen), d(gen)};
}

std::vector<Point3> random_path(std::mt19937_64& gen, std::size_t n) {
    std::vector<Point3> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(random_point(gen));
    return pts;
}

}  // namespace

TEST(Tension, Range) {
    EXPECT_EQ(Tension().value(), 0.5);
    EXPECT_NO_THROW(Tension(0.0));
    EXPECT_NO_THROW(Tension(1.0));
    EXPECT_THROW(Tension(-0.01), Error);
    EXPECT_THROW(Tension(1.5), Error);
    EXPECT_THROW(Tension(NAN), Error);
}

TEST(BuildSegment, WorkedExample) {
    // m0 = m1 = (1, 0.5, 0); Hermite basis at u = 0.5 is (0.5, 0.125, 0.5, -0.125).
    const auto seg = build_segment({0, 0, 0}, {1, 0, 0}, {2, 1, 0}, {3, 1, 0}, Tension(0.5));
    const Point3 p = seg.eval(0.5);
    EXPECT_NEAR(p.x, 1.5, 1e-15);
    EXPECT_NEAR(p.y, 0.5, 1e-15);
    EXPECT_NEAR(p.z, 0.0, 1e-15);
}

TEST(BuildSegment, BoundaryConditions) {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> tdist(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Point3 pm1 = random_point(gen), p0 = random_point(gen), p1 = random_point(gen),
                     p2 = random_point(gen);
        const double t = tdist(gen);
        const auto seg = build_segment(pm1, p0, p1, p2, Tension(t));
        EXPECT_LE(rel_err(seg.eval(0.0), p0), 1e-12);
        EXPECT_LE(rel_err(seg.eval(1.0), p1), 1e-12);
        EXPECT_LE(rel_err(seg.derivative(0.0), t * (p1 - pm1)), 1e-12);
        EXPECT_LE(rel_err(seg.derivative(1.0), t * (p2 - p0)), 1e-12);
        // Cached coefficients, not the shortcuts, must also satisfy the conditions.
        EXPECT_LE(rel_err(seg.a() + seg.b() + seg.c() + seg.d(), p1), 1e-12);
        EXPECT_LE(rel_err(3.0 * seg.a() + 2.0 * seg.b() + seg.c(), t * (p2 - p0)), 1e-12);
    }
}

TEST(BuildSegment, MatchesHermiteBasis) {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const Point3 pm1 = random_point(gen), p0 = random_point(gen), p1 = random_point(gen),
                     p2 = random_point(gen);
        const double t = unit(gen), u = unit(gen);
        const auto seg = build_segment(pm1, p0, p1, p2, Tension(t));
        EXPECT_LE(rel_err(seg.eval(u), oracle::hermite(pm1, p0, p1, p2, t, u)), 1e-12);
    }
}

TEST(BuildSegment, ZeroTensionStaysOnChord) {
    std::mt19937_64 gen(3);
    const Point3 pm1 = random_point(gen), p0 = random_point(gen), p1 = random_point(gen),
                 p2 = random_point(gen);
    const auto seg = build_segment(pm1, p0, p1, p2, Tension(0.0));
    for (int k = 0; k <= 100; ++k) {
        const double u = k / 100.0;
        const double beta = 3 * u * u - 2 * u * u * u;
        EXPECT_LE(norm(seg.eval(u) - ((1 - beta) * p0 + beta * p1)), 1e-12 * norm(p1 - p0) + 1e-12);
    }
}

TEST(BuildSegment, RejectsNonFinite) {
    try {
        build_segment({NAN, 0, 0}, {0, 0, 0}, {1, 0, 0}, {2, 0, 0}, Tension());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::invalid_input);
    }
}

TEST(EndpointPolicy, PhantomDuplication) {
    const Point3 a{0, 0, 0}, b{1, 0, 0}, c{2, 1, 0};
    EXPECT_EQ(endpoint_policy(std::vector<Point3>{a, b}), (std::vector<Point3>{a, a, b, b}));
    EXPECT_EQ(endpoint_policy(std::vector<Point3>{a, b, c}),
              (std::vector<Point3>{a, a, b, c, c}));
    EXPECT_EQ(PathCurve::catmull_rom({a, b}).segments().size(), 1u);
    EXPECT_EQ(PathCurve::catmull_rom({a, b, c}).segments().size(), 2u);
    EXPECT_EQ(PathCurve::catmull_rom(oracle::route()).segments().size(), 5u);
    try {
        endpoint_policy(std::vector<Point3>{a});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::path_too_short);
    }
}

TEST(PathCurve, RejectsShortPaths) {
    for (auto kind : {CurveKind::polyline, CurveKind::bezier, CurveKind::catmull_rom}) {
        try {
            PathCurve::make(kind, {{1, 2, 3}});
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::path_too_short);
        }
    }
}

TEST(Eval, CatmullRomHitsRouteKeypoints) {
    const auto pts = oracle::route();
    const auto curve = PathCurve::catmull_rom(pts);
    for (int k = 0; k <= 5; ++k) {
        EXPECT_LT(norm(curve.eval(k / 5.0) - pts[k]), 1e-9) << "knot " << k;
    }
}

TEST(Eval, CatmullRomMatchesOracleEverywhere) {
    const auto pts = oracle::route();
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
        const auto curve = PathCurve::catmull_rom(pts, Tension(t));
        for (int j = 0; j <= 1000; ++j) {
            const double s = j / 1000.0;
            EXPECT_LE(rel_err(curve.eval(s), oracle::catmull_rom_at(pts, t, s)), 1e-12);
        }
    }
}

TEST(Eval, BezierEndpointsAndOracle) {
    const auto pts = oracle::route();
    const auto curve = PathCurve::bezier(pts);
    EXPECT_EQ(curve.eval(0.0), (Point3{121.47, 31.23, 10000}));
    EXPECT_LT(norm(curve.eval(1.0) - Point3{200.00, -13.50, 50000}), 1e-9);
    for (int j = 0; j <= 200; ++j) {
        const double s = j / 200.0;
        EXPECT_LE(rel_err(curve.eval(s), oracle::bernstein_at(pts, s)), 1e-12);
    }
}

TEST(Eval, PolylineMidpoint) {
    const Point3 a{1, 2, 3}, b{5, -2, 9};
    EXPECT_EQ(PathCurve::polyline({a, b}).eval(0.5), (a + b) / 2.0);
}

TEST(Eval, DomainErrors) {
    const auto curve = PathCurve::catmull_rom(oracle::route());
    for (double s : {-1e-9, 1.0 + 1e-9, double(NAN)}) {
        try {
            curve.eval(s);
            FAIL() << s;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::domain);
        }
        EXPECT_THROW(curve.tangent(s), Error);
    }
}

TEST(Eval, InterpolationPropertyRandomPaths) {
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 100; ++trial) {
        const auto pts = random_path(gen, 2 + trial % 10);
        for (auto kind : {CurveKind::polyline, CurveKind::catmull_rom}) {
            const auto curve = PathCurve::make(kind, pts, Tension(0.3 + 0.007 * trial));
            for (std::size_t k = 0; k < pts.size(); ++k) {
                EXPECT_LT(norm(curve.eval(curve.knot(k)) - pts[k]), 1e-9);
            }
        }
    }
}

TEST(Eval, BezierMissesInteriorKeypoints) {
    const auto pts = oracle::route();
    const auto curve = PathCurve::bezier(pts);
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
        double best = INFINITY;
        for (int j = 0; j <= 100000; ++j) best = std::min(best, distance(curve.eval(j / 1e5), pts[k]));
        EXPECT_GT(best, 1e-3) << "keypoint " << k;
    }
}

TEST(Eval, AffineInvariance) {
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double m[3][3] = {{d(gen), d(gen), d(gen)}, {d(gen), d(gen), d(gen)},
                                {d(gen), d(gen), d(gen)}};
        const Point3 shift = random_point(gen);
        const auto affine = [&](const Point3& p) {
            return Point3{m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
                          m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
                          m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z} +
                   shift;
        };
        const auto pts = random_path(gen, 3 + trial % 5);
        std::vector<Point3> mapped;
        for (const auto& p : pts) mapped.push_back(affine(p));
        for (auto kind : {CurveKind::polyline, CurveKind::bezier, CurveKind::catmull_rom}) {
            const auto a = PathCurve::make(kind, pts);
            const auto b = PathCurve::make(kind, mapped);
            for (int j = 0; j <= 50; ++j) {
                EXPECT_LT(norm(b.eval(j / 50.0) - affine(a.eval(j / 50.0))), 1e-9);
            }
        }
    }
}

TEST(Tangent, CatmullRomInteriorKnot) {
    const auto pts = oracle::route();
    const double t = 0.5;
    const auto curve = PathCurve::catmull_rom(pts, Tension(t));
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
        const Point3 expected = 5.0 * t * (pts[i + 1] - pts[i - 1]);  // ds = du / 5
        EXPECT_LE(rel_err(curve.tangent(curve.knot(i)), expected), 1e-12);
        EXPECT_LE(rel_err(curve.tangent_left(curve.knot(i)), expected), 1e-12);
    }
}

TEST(Tangent, C1AtInteriorKnots) {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto pts = random_path(gen, 3 + trial % 8);
        const auto curve = PathCurve::catmull_rom(pts, Tension(0.1 + 0.018 * trial));
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
            const double s = curve.knot(i);
            EXPECT_LT(angle_between(curve.tangent_left(s), curve.tangent(s)), 1e-9);
        }
    }
}

TEST(Tangent, CollinearPathIsParallel) {
    const Point3 dir{1, 2, -2};
    std::vector<Point3> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(Point3{3, 1, 4} + double(i) * dir);
    for (auto kind : {CurveKind::polyline, CurveKind::bezier, CurveKind::catmull_rom}) {
        const auto curve = PathCurve::make(kind, pts);
        for (int j = 0; j <= 100; ++j) {
            EXPECT_LT(angle_between(curve.tangent(j / 100.0), dir), 1e-9);
        }
    }
}

TEST(Tangent, PolylineCornerTieBreak) {
    const auto curve = PathCurve::polyline({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
    EXPECT_EQ(curve.tangent(0.5), (Point3{0, 2, 0}));       // right segment
    EXPECT_EQ(curve.tangent_left(0.5), (Point3{2, 0, 0}));  // left segment
    EXPECT_NEAR(angle_between(curve.tangent_left(0.5), curve.tangent(0.5)), M_PI / 2, 1e-15);
}

TEST(Tangent, FiniteDifferenceConsistency) {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto pts = random_path(gen, 7);
    for (auto kind : {CurveKind::polyline, CurveKind::bezier, CurveKind::catmull_rom}) {
        const auto curve = PathCurve::make(kind, pts);
        const double h = 1e-6;
        for (int i = 0; i < 100; ++i) {
            double s = unit(gen);
            // Stay inside one piece so the polyline kink does not enter the stencil.
            const std::size_t piece = curve.piece_at(s);
            s = std::clamp(s, curve.piece_start(piece) + 2 * h, curve.piece_end(piece) - 2 * h);
            const Point3 fd = (curve.eval(s + h) - curve.eval(s - h)) / (2 * h);
            EXPECT_LE(norm(fd - curve.tangent(s)) / norm(curve.tangent(s)), 1e-6);
        }
    }
}

TEST(ArcLength, Basics) {
    EXPECT_NEAR(arc_length(PathCurve::polyline({{0, 0, 0}, {3, 4, 0}})), 5.0, 1e-12);
    const auto curve = PathCurve::catmull_rom(oracle::route());
    EXPECT_EQ(arc_length(curve, 0.37, 0.37), 0.0);
    EXPECT_THROW(arc_length(curve, 0.6, 0.5), Error);
    EXPECT_THROW(arc_length(curve, -0.1, 0.5), Error);
}

TEST(ArcLength, RouteRegressionConstant) {
    const double got = arc_length(PathCurve::catmull_rom(oracle::route()));
    EXPECT_NEAR(got / kRouteCatmullRomLength, 1.0, 1e-8);
}

TEST(ArcLength, MatchesChordalOracle) {
    const auto pts = oracle::route();
    const auto bez = PathCurve::bezier(pts);
    const double chord = oracle::chordal_length([&](double s) { return oracle::bernstein_at(pts, s); },
                                                0.0, 1.0, 200000);
    EXPECT_NEAR(arc_length(bez) / chord, 1.0, 1e-7);
    EXPECT_NEAR(arc_length(PathCurve::polyline(pts)), 40093.073015258859, 1e-8);
}

TEST(ArcLength, Additive) {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto kind : {CurveKind::polyline, CurveKind::bezier, CurveKind::catmull_rom}) {
        const auto curve = PathCurve::make(kind, oracle::route());
        for (int i = 0; i < 50; ++i) {
            double v[3] = {unit(gen), unit(gen), unit(gen)};
            std::sort(v, v + 3);
            const double whole = arc_length(curve, v[0], v[2]);
            const double parts = arc_length(curve, v[0], v[1]) + arc_length(curve, v[1], v[2]);
            EXPECT_LE(std::abs(whole - parts), 1e-7 * std::max(whole, 1e-300));
        }
    }
}

TEST(AdvanceByLength, InvertsArcLength) {
    const auto curve = PathCurve::catmull_rom(oracle::route());
    const double total = arc_length(curve);
    for (double frac : {0.0, 0.1, 0.25, 0.5, 0.9}) {
        const auto adv = advance_by_length(curve, 0.0, frac * total);
        EXPECT_NEAR(adv.traveled, frac * total, 1e-9 * total);
        EXPECT_NEAR(arc_length(curve, 0.0, adv.s), frac * total, 1e-8 * total);
    }
    const auto past_end = advance_by_length(curve, 0.5, total);
    EXPECT_EQ(past_end.s, 1.0);
    EXPECT_NEAR(past_end.traveled, arc_length(curve, 0.5, 1.0), 1e-8 * total);
}

TEST(AdvanceByLength, StepsAcrossPolylineKnots) {
    const auto curve = PathCurve::polyline({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 2}});
    double s = 0.0, walked = 0.0;
    for (int i = 0; i < 40; ++i) {
        const auto adv = advance_by_length(curve, s, 0.1);
        s = adv.s;
        walked += adv.traveled;
    }
    EXPECT_NEAR(walked, 4.0, 1e-12);
    EXPECT_EQ(s, 1.0);
}

TEST(AdvanceByLength, ZeroTensionCusps) {
    // Tangents vanish at every knot when t = 0.
    const auto curve = PathCurve::catmull_rom({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}}, Tension(0.0));
    double s = 0.0, walked = 0.0;
    while (s < 1.0) {
        const auto adv = advance_by_length(curve, s, 0.01);
        s = adv.s;
        walked += adv.traveled;
    }
    EXPECT_NEAR(walked, 2.0, 1e-9);
}
