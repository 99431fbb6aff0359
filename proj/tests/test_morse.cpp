#include <morsetwist/catalog.hpp>

#include <gtest/gtest.h>

using namespace morsetwist;
using catalog::flow;
using catalog::ratios;
using catalog::unit_vector;

namespace {

template <typename R>
const ChainComplex<R>& as(const AnyComplex& C)
{
    return std::get<ChainComplex<R>>(C);
}

std::string homology_str(const MorseDatum& d, const LocalSystem& sys)
{
    return summary_str(homology(build_complex(d, sys)));
}

std::string cohomology_str(const MorseDatum& d, const LocalSystem& sys)
{
    return summary_str(homology(build_cochain(d, sys)));
}

} // namespace

TEST(FlowWeights, Conventions)
{
    const FlowLine f = flow("q", "p", 1, ratios({"1/2", "3"}), -1);
    const auto exp = LocalSystem::exp(ratios({"2", "0"}));
    const auto nov = LocalSystem::nov(ratios({"2", "1/3"}));
    EXPECT_EQ(flow_weight_exp(f, exp), ExpSum::monomial(1));
    EXPECT_EQ(flow_weight_nov(f, nov), NovElem::monomial(-2));
    EXPECT_EQ(flow_weight_int(f, LocalSystem::unit_rep()), -1);
    EXPECT_EQ(flow_weight_int(f, LocalSystem::trivial()), 1);
    const FlowLine untagged = flow("q", "p", 1, ratios({"0", "0"}));
    EXPECT_THROW(flow_weight_int(untagged, LocalSystem::unit_rep()), MissingUnitTag);
}

TEST(BuildComplex, CircleBoundaries)
{
    const MorseDatum d = catalog::circle_std().datum;
    EXPECT_EQ(as<Integer>(build_complex(d, LocalSystem::trivial())).link(1), Matrix<Integer>{{0}});
    EXPECT_EQ(as<Integer>(build_complex(d, LocalSystem::unit_rep())).link(1), Matrix<Integer>{{2}});
    const ExpSum e = as<ExpSum>(build_complex(d, LocalSystem::exp(ratios({"1"})))).link(1)(0, 0);
    EXPECT_EQ(e, ExpSum::monomial(Rational(-1, 2)) - ExpSum::monomial(Rational(1, 2)));
    const NovElem n = as<NovElem>(build_complex(d, LocalSystem::nov(ratios({"1"})))).link(1)(0, 0);
    EXPECT_EQ(n, NovElem::monomial(Rational(1, 2)) - NovElem::monomial(Rational(-1, 2)));
    const ExpSum c = as<ExpSum>(build_cochain(d, LocalSystem::exp(ratios({"1"})))).link(1)(0, 0);
    EXPECT_EQ(c, ExpSum::monomial(Rational(1, 2)) - ExpSum::monomial(Rational(-1, 2)));
}

TEST(BuildComplex, ProjectivePlaneBoundaries)
{
    const MorseDatum d = catalog::rp2().datum;
    const AnyComplex trivial = build_complex(d, LocalSystem::trivial());
    const auto& T = as<Integer>(trivial);
    EXPECT_EQ(T.link(1), Matrix<Integer>{{0}});
    EXPECT_EQ(T.link(2), Matrix<Integer>{{2}});
    const AnyComplex unit = build_complex(d, LocalSystem::unit_rep());
    const auto& U = as<Integer>(unit);
    EXPECT_EQ(U.link(1), Matrix<Integer>{{2}});
    EXPECT_EQ(U.link(2), Matrix<Integer>{{0}});
    EXPECT_EQ(homology_str(d, LocalSystem::unit_rep()), "Z/2, 0, Z");
    EXPECT_EQ(cohomology_str(d, LocalSystem::trivial()), "Z, 0, Z/2");
}

TEST(BuildComplex, Genus2CoboundaryColumns)
{
    const MorseDatum d = catalog::genus2_datum();
    const AnyComplex cochain = build_cochain(d, LocalSystem::exp(unit_vector(4, 0)));
    const auto& C = as<ExpSum>(cochain);
    const Matrix<ExpSum>& delta1 = C.link(2);
    ASSERT_EQ(delta1.rows(), 1u);
    ASSERT_EQ(delta1.cols(), 4u);
    EXPECT_TRUE(delta1(0, 0).is_zero());
    EXPECT_EQ(delta1(0, 1), ExpSum::monomial(-1) - ExpSum(1));
    EXPECT_TRUE(delta1(0, 2).is_zero());
    EXPECT_TRUE(delta1(0, 3).is_zero());
    const Matrix<ExpSum>& delta0 = C.link(1);
    EXPECT_EQ(delta0(0, 0), ExpSum(1) - ExpSum::monomial(-1));
    EXPECT_TRUE(delta0(1, 0).is_zero());
    EXPECT_EQ(cohomology_str(d, LocalSystem::exp(unit_vector(4, 0))), "0, R^2, 0");
}

TEST(BuildComplex, ClassLengthMismatch)
{
    EXPECT_THROW(build_complex(catalog::genus2_datum(), LocalSystem::exp(ratios({"1"}))), DatumError);
    EXPECT_THROW(build_complex(catalog::torus().datum, LocalSystem::unit_rep()), MissingUnitTag);
}

TEST(Datum, ValidationErrors)
{
    MorseDatum d = catalog::circle_std().datum;
    d.flows[0].sign = 2;
    EXPECT_THROW(d.validate(), DatumError);
    d = catalog::circle_std().datum;
    d.flows[0].to = "q";
    EXPECT_THROW(d.validate(), DatumError);
    d = catalog::circle_std().datum;
    d.points.push_back({"p", 1});
    EXPECT_THROW(d.validate(), DatumError);
    d = catalog::circle_std().datum;
    d.flows[1].periods = {};
    EXPECT_THROW(d.validate(), DatumError);
    d = catalog::circle_std().datum;
    d.flows[1].unit_tag = 3;
    EXPECT_THROW(d.validate(), DatumError);
    d = catalog::circle_std().datum;
    d.flows[0].deck_tag = "g";
    EXPECT_THROW(d.validate(), DatumError);
}

TEST(DeckGroup, TableChecks)
{
    EXPECT_NO_THROW((DeckGroup{{"e", "s"}, {{"e", "s"}, {"s", "e"}}}.validate()));
    EXPECT_THROW((DeckGroup{{"e", "s"}, {{"e", "s"}, {"s", "s"}}}.validate()), DatumError);
    EXPECT_THROW((DeckGroup{{"e", "s"}, {{"e", "x"}, {"s", "e"}}}.validate()), DatumError);
    EXPECT_THROW((DeckGroup{{"0", "1", "2"}, {{"0", "2", "1"}, {"2", "1", "0"}, {"1", "0", "2"}}}.validate()), DatumError);
    const DeckGroup z3{{"0", "1", "2"}, {{"0", "1", "2"}, {"1", "2", "0"}, {"2", "0", "1"}}};
    EXPECT_NO_THROW(z3.validate());
    EXPECT_EQ(z3.multiply("2", "2"), "1");
}

TEST(Gauge, IdentityGaugeIsNoOp)
{
    const MorseDatum d = catalog::rp2().datum;
    EXPECT_EQ(gauge_transform(d, {{"p", 1}, {"q", 1}, {"r", 1}}), d);
}

TEST(Gauge, OrientationReversalOfTheCircle)
{
    const MorseDatum d = catalog::circle_std().datum;
    const MorseDatum g = gauge_transform(d, {{"p", 1}, {"q", -1}});
    EXPECT_EQ(*g.flows[0].unit_tag, -1);
    EXPECT_EQ(*g.flows[1].unit_tag, 1);
    EXPECT_EQ(as<Integer>(build_complex(g, LocalSystem::unit_rep())).link(1), Matrix<Integer>{{-2}});
    EXPECT_EQ(homology_str(g, LocalSystem::unit_rep()), homology_str(d, LocalSystem::unit_rep()));
}

TEST(Gauge, RejectsNonUnits)
{
    const MorseDatum d = catalog::circle_std().datum;
    EXPECT_THROW(gauge_transform(d, {{"p", 2}, {"q", 1}}), NonUnit);
    EXPECT_THROW(gauge_transform(d, {{"p", 1}}), NonUnit);
}

TEST(Potential, ShiftChangesPeriodsNotHomology)
{
    const MorseDatum d = catalog::genus2_datum();
    const MorseDatum s = shift_potential(d, {{"p1_2", ratios({"1/3", "0", "-2", "5"})}});
    EXPECT_NE(s, d);
    for (const auto& cls : {unit_vector(4, 0), unit_vector(4, 1), ratios({"1", "-2", "1/3", "0"})}) {
        EXPECT_EQ(cohomology_str(s, LocalSystem::exp(cls)), cohomology_str(d, LocalSystem::exp(cls)));
        EXPECT_EQ(homology_str(s, LocalSystem::nov(cls)), homology_str(d, LocalSystem::nov(cls)));
    }
    EXPECT_THROW(shift_potential(d, {{"p0", ratios({"1"})}}), DatumError);
}

TEST(Lift, DoubleCoverOfTheProjectivePlane)
{
    const MorseDatum lifted = lift_cover(catalog::rp2_lift().datum);
    EXPECT_EQ(lifted.points.size(), 6u);
    EXPECT_EQ(lifted.flows.size(), 8u);
    EXPECT_EQ(homology_str(lifted, LocalSystem::trivial()), "Z, 0, Z");
    EXPECT_THROW(lift_cover(catalog::rp2().datum), DatumError);
}

TEST(Loops, CircleAndTorus)
{
    const auto circle = detected_loops(catalog::circle_std().datum);
    ASSERT_EQ(circle.size(), 1u);
    EXPECT_EQ(circle[0].unit, -1);
    EXPECT_TRUE(circle[0].periods[0] == 1 || circle[0].periods[0] == -1);
    const auto torus = detected_loops(catalog::torus().datum);
    EXPECT_EQ(torus.size(), 4u);
}

TEST(Loops, Disconnected)
{
    MorseDatum d;
    d.dimension = 1;
    d.points = {{"q", 1}};
    EXPECT_THROW(detected_loops(d), Disconnected);
    d.points = {{"p", 0}, {"p'", 0}, {"q", 1}};
    d.flows = {flow("q", "p", 1, {}), flow("q", "p", -1, {})};
    EXPECT_THROW(detected_loops(d), Disconnected);
}

TEST(Loops, NonSimplicity)
{
    EXPECT_TRUE(nonsimplicity_witness(catalog::circle_std().datum, LocalSystem::unit_rep()).has_value());
    EXPECT_FALSE(nonsimplicity_witness(catalog::circle_std().datum, LocalSystem::trivial()).has_value());
    EXPECT_FALSE(nonsimplicity_witness(catalog::circle_std().datum, LocalSystem::exp(ratios({"0"}))).has_value());
    EXPECT_TRUE(nonsimplicity_witness(catalog::genus2_datum(), LocalSystem::nov(unit_vector(4, 3))).has_value());
}

TEST(DegreeZero, QuotientAndInvariants)
{
    const MorseDatum circle = catalog::circle_std().datum;
    EXPECT_EQ(h0_quotient(circle, LocalSystem::trivial()).str(), "Z");
    EXPECT_EQ(h0_quotient(circle, LocalSystem::unit_rep()).str(), "Z/2");
    EXPECT_EQ(h0_quotient(circle, LocalSystem::exp(ratios({"1"}))).str(), "0");
    EXPECT_EQ(h0_quotient(circle, LocalSystem::exp(ratios({"0"}))).str(), "R");
    EXPECT_EQ(h0_quotient(circle, LocalSystem::nov(ratios({"1"}))).str(), "0");
    EXPECT_EQ(h0_cohomology(circle, LocalSystem::unit_rep()).str(), "0");
    EXPECT_EQ(h0_cohomology(circle, LocalSystem::trivial()).str(), "Z");
    EXPECT_EQ(h0_cohomology(catalog::rp2().datum, LocalSystem::exp(ratios({"1"}))).str(), "R");
}

TEST(DegreeZero, AgreesWithComplexAcrossCatalog)
{
    for (const auto& e : default_catalog()) {
        for (const auto& sys : declared_systems(e)) {
            if (sys.flavor == LocalSystem::Flavor::UnitRep && e.datum.flows.size() && !e.datum.flows[0].unit_tag)
                continue;
            const auto H = homology(build_complex(e.datum, sys));
            const auto D = homology(build_cochain(e.datum, sys));
            EXPECT_EQ(h0_quotient(e.datum, sys).str(), group_str(H.degrees[0], H.regime))
                << e.name << " " << system_str(sys);
            EXPECT_EQ(h0_cohomology(e.datum, sys).str(), group_str(D.degrees[0], D.regime))
                << e.name << " " << system_str(sys);
        }
    }
}

TEST(SystemNames, Rendering)
{
    EXPECT_EQ(system_str(LocalSystem::trivial()), "trivial");
    EXPECT_EQ(system_str(LocalSystem::exp(ratios({"1", "-1/2"}))), "exp(1,-1/2)");
}
