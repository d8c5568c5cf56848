#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "test_support.hpp"

using namespace weakval;
using namespace weakval::testing;

namespace {

const double kRoot2 = std::sqrt(2.0);
const double kRoot3 = std::sqrt(3.0);

StateVector uniform_boxes_state(double sign_c) {
    const Basis boxes({"A", "B", "C"});
    CVector amps(3);
    amps << Complex(1.0 / kRoot3, 0.0), Complex(1.0 / kRoot3, 0.0),
        Complex(sign_c / kRoot3, 0.0);
    return StateVector(boxes, amps);
}

} // namespace

TEST_CASE("basis validation and lookup") {
    CHECK_THROWS_AS(Basis({}), std::invalid_argument);
    CHECK_THROWS_AS(Basis({"A", "A"}), std::invalid_argument);
    CHECK_THROWS_AS(Basis({""}), std::invalid_argument);

    const Basis boxes({"A", "B", "C"});
    CHECK(boxes.dimension() == 3);
    CHECK(boxes.index_of("B") == 1);
    CHECK(!boxes.index_of("Z"));

    const Basis other({"A", "B", "C"});
    CHECK(boxes == other);
    CHECK(boxes != Basis({"B", "A", "C"}));
}

TEST_CASE("tensor basis labels are row-major x⊗y") {
    const Basis p({"Np", "Ip"});
    const Basis e({"Ne", "Ie"});
    const Basis joint = Basis::tensor(p, e);
    CHECK(joint.labels() == std::vector<std::string>{"Np⊗Ne", "Np⊗Ie", "Ip⊗Ne", "Ip⊗Ie"});
}

TEST_CASE("state amplitudes must be finite and sized to the basis") {
    const Basis boxes({"A", "B", "C"});
    CVector bad(3);
    bad << Complex(std::numeric_limits<double>::quiet_NaN(), 0.0), Complex(0, 0), Complex(0, 0);
    CHECK_THROWS_AS(StateVector(boxes, bad), std::invalid_argument);
    CHECK_THROWS_AS(StateVector(boxes, CVector::Zero(2)), std::invalid_argument);
}

TEST_CASE("inner products on an orthonormal basis") {
    const Basis boxes({"A", "B", "C"});
    const StateVector a = StateVector::basis_ket(boxes, "A");
    const StateVector b = StateVector::basis_ket(boxes, "B");
    CHECK(near(inner(a, a), Complex(1, 0), 1e-15));
    CHECK(near(inner(a, b), Complex(0, 0), 1e-15));

    // hand expansion (1 + 1 - 1)/3 for the box scenario pre/post pair
    CHECK(near(inner(uniform_boxes_state(-1.0), uniform_boxes_state(1.0)),
               Complex(1.0 / 3.0, 0.0), 1e-12));

    const Basis pair({"x", "y"});
    CHECK_THROWS_AS(inner(a, StateVector::basis_ket(pair, "x")), BasisMismatch);
}

TEST_CASE("inner product is conjugate symmetric and Cauchy-Schwarz bounded") {
    auto rng = make_rng();
    const Basis basis = numbered_basis(4);
    for (int iter = 0; iter < 100; ++iter) {
        const StateVector u = random_state(rng, basis);
        const StateVector v = random_state(rng, basis);
        CHECK(near(inner(u, v), std::conj(inner(v, u)), 1e-12));
        CHECK(std::norm(inner(u, v)) <= u.squared_norm() * v.squared_norm() + 1e-12);
    }
}

TEST_CASE("tensor of states multiplies amplitudes and norms") {
    const Basis p({"Np", "Ip"});
    const Basis e({"Ne", "Ie"});
    const StateVector joint =
        tensor(StateVector::basis_ket(p, "Np"), StateVector::basis_ket(e, "Ne"));
    CHECK(joint.dimension() == 4);
    CHECK(near(joint.amplitude("Np⊗Ne"), Complex(1, 0), 1e-15));
    CHECK(near(joint.amplitude("Ip⊗Ie"), Complex(0, 0), 1e-15));

    auto rng = make_rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        const StateVector x = normalize(random_state(rng, p));
        const StateVector y = normalize(random_state(rng, e));
        CHECK(near(tensor(x, y).norm(), 1.0, 1e-12));
    }
}

TEST_CASE("tensor_op matches the Kronecker convention of tensor") {
    const Basis p({"Np", "Ip"});
    const Basis e({"Ne", "Ie"});
    const OperatorMatrix ip = OperatorMatrix::identity(p);
    const OperatorMatrix ie = OperatorMatrix::identity(e);
    const OperatorMatrix joint_id = tensor_op(ip, ie);
    CHECK((joint_id.matrix() - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    const OperatorMatrix np = projector_onto(StateVector::basis_ket(p, "Np"));
    const OperatorMatrix proj_ie = projector_onto(StateVector::basis_ket(e, "Ie"));
    const OperatorMatrix pair = tensor_op(np, proj_ie);
    CHECK((pair.matrix() * pair.matrix() - pair.matrix()).cwiseAbs().maxCoeff() <= 1e-14);

    // picking the Np⊗Ie branch out of the intermediate two-particle state
    CVector amps(4);
    amps << Complex(1.0 / kRoot3, 0.0), Complex(0.0, 1.0 / kRoot3), Complex(0.0, 1.0 / kRoot3),
        Complex(0.0, 0.0);
    const StateVector intermediate(Basis::tensor(p, e), amps);
    const StateVector picked = apply(pair, intermediate);
    CHECK(near(picked.amplitude("Np⊗Ie"), Complex(0.0, 1.0 / kRoot3), 1e-12));
    CHECK(near(picked.amplitude("Np⊗Ne"), Complex(0, 0), 1e-15));
    CHECK(near(picked.amplitude("Ip⊗Ne"), Complex(0, 0), 1e-15));
}

TEST_CASE("apply: identity, 50-50 splitter, and the general splitter column") {
    const Basis source({"p", "vac"});
    const Basis arms({"N", "I"});
    CMatrix fifty(2, 2);
    const double h = 1.0 / kRoot2;
    // |p⟩ → (|N⟩ + i|I⟩)/√2 with the second column completing a unitary
    fifty << Complex(h, 0), Complex(0, h), Complex(0, h), Complex(h, 0);
    const OperatorMatrix bs1(source, arms, fifty);
    const StateVector out = apply(bs1, StateVector::basis_ket(source, "p"));
    CHECK(near(out.amplitude("N"), Complex(h, 0), 1e-15));
    CHECK(near(out.amplitude("I"), Complex(0, h), 1e-15));

    const StateVector s = StateVector::basis_ket(arms, "N");
    CHECK(near(apply(OperatorMatrix::identity(arms), s).amplitude("N"), Complex(1, 0), 1e-15));

    // general splitter: |N⟩ → i·r·e^{−iβ}|B⟩ + q|D⟩
    const double q = 0.6;
    const double r = 0.8;
    const double beta = 0.3;
    const Basis ports({"B", "D"});
    CMatrix general(2, 2);
    const Complex phase(std::cos(beta), std::sin(beta));
    general << Complex(q, 0), Complex(0, 1) * r * std::conj(phase), Complex(0, 1) * r * phase,
        Complex(q, 0);
    const OperatorMatrix bs2(Basis({"I", "N"}), ports, general);
    const StateVector n_out = apply(bs2, StateVector::basis_ket(Basis({"I", "N"}), "N"));
    CHECK(near(n_out.amplitude("B"), Complex(0, 1) * r * std::conj(phase), 1e-15));
    CHECK(near(n_out.amplitude("D"), Complex(q, 0), 1e-15));

    CHECK_THROWS_AS(apply(bs2, StateVector::basis_ket(ports, "B")), BasisMismatch);
}

TEST_CASE("projector_onto") {
    const Basis boxes({"A", "B", "C"});
    const OperatorMatrix pa = projector_onto(StateVector::basis_ket(boxes, "A"));
    CMatrix expected = CMatrix::Zero(3, 3);
    expected(0, 0) = 1.0;
    CHECK((pa.matrix() - expected).cwiseAbs().maxCoeff() == 0.0);

    const OperatorMatrix scaled =
        projector_onto(Complex(2, 0) * StateVector::basis_ket(boxes, "A"));
    CHECK((scaled.matrix() - pa.matrix()).cwiseAbs().maxCoeff() <= 1e-15);

    auto rng = make_rng(11);
    for (int iter = 0; iter < 50; ++iter) {
        const OperatorMatrix p = projector_onto(random_state(rng, boxes));
        CHECK(near(p.matrix().trace().real(), 1.0, 1e-12));
        CHECK((p.matrix() * p.matrix() - p.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(is_hermitian(p, 1e-12));
    }

    CHECK_THROWS_AS(projector_onto(StateVector(boxes, CVector::Zero(3))), ZeroVector);
}

TEST_CASE("is_unitary") {
    const Basis arms({"I", "N"});
    const Basis ports({"B", "D"});
    auto rng = make_rng(13);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.141592653589793);
    for (int iter = 0; iter < 25; ++iter) {
        const double theta = angle(rng);
        const double q = std::abs(std::cos(theta));
        const double r = std::sqrt(1.0 - q * q);
        const double beta = angle(rng);
        const Complex phase(std::cos(beta), std::sin(beta));
        CMatrix m(2, 2);
        m << Complex(q, 0), Complex(0, 1) * r * std::conj(phase), Complex(0, 1) * r * phase,
            Complex(q, 0);
        CHECK(is_unitary(OperatorMatrix(arms, ports, m), 1e-12));
    }

    CMatrix stretch(2, 2);
    stretch << Complex(2, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0);
    CHECK(!is_unitary(OperatorMatrix(arms, stretch), 1e-10));
    CHECK(is_unitary(OperatorMatrix::identity(arms), 0.0));
}

TEST_CASE("unitaries preserve norms") {
    auto rng = make_rng(17);
    const Basis basis = numbered_basis(4);
    for (int iter = 0; iter < 50; ++iter) {
        const OperatorMatrix u = random_unitary(rng, basis);
        REQUIRE(is_unitary(u, 1e-12));
        const StateVector s = random_state(rng, basis);
        CHECK(near(apply(u, s).norm(), s.norm(), 1e-10));
    }
}

TEST_CASE("tensor_op and tensor commute with apply") {
    auto rng = make_rng(19);
    const Basis p = numbered_basis(2);
    const Basis e({"f0", "f1", "f2"});
    for (int iter = 0; iter < 50; ++iter) {
        const OperatorMatrix a = random_hermitian(rng, p);
        const OperatorMatrix b = random_hermitian(rng, e);
        const StateVector x = random_state(rng, p);
        const StateVector y = random_state(rng, e);
        const StateVector lhs = apply(tensor_op(a, b), tensor(x, y));
        const StateVector rhs = tensor(apply(a, x), apply(b, y));
        CHECK((lhs.amplitudes() - rhs.amplitudes()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("adjoint, composition, and arithmetic") {
    auto rng = make_rng(23);
    const Basis basis = numbered_basis(3);
    const OperatorMatrix a = random_hermitian(rng, basis);
    const OperatorMatrix b = random_hermitian(rng, basis);

    const OperatorMatrix ab = a * b;
    CHECK((adjoint(ab).matrix() - (adjoint(b) * adjoint(a)).matrix()).cwiseAbs().maxCoeff() <=
          1e-12);

    const OperatorMatrix sum = a + b;
    CHECK((sum.matrix() - (a.matrix() + b.matrix())).cwiseAbs().maxCoeff() == 0.0);

    const OperatorMatrix twice = Complex(2, 0) * a;
    CHECK((twice.matrix() - 2.0 * a.matrix()).cwiseAbs().maxCoeff() == 0.0);

    const Basis other = numbered_basis(4);
    CHECK_THROWS_AS(a * random_hermitian(rng, other), BasisMismatch);
    CHECK_THROWS_AS(a + random_hermitian(rng, other), BasisMismatch);
}

TEST_CASE("normalize") {
    const Basis boxes({"A", "B", "C"});
    CVector amps(3);
    amps << Complex(3, 0), Complex(0, 4), Complex(0, 0);
    CHECK(near(normalize(StateVector(boxes, amps)).norm(), 1.0, 1e-15));
    CHECK_THROWS_AS(normalize(StateVector(boxes, CVector::Zero(3))), ZeroVector);
}

TEST_CASE("operators between distinct bases refuse basis() and hermiticity") {
    const Basis arms({"I", "N"});
    const Basis ports({"B", "D"});
    const OperatorMatrix map(arms, ports, CMatrix::Identity(2, 2));
    CHECK_THROWS_AS(map.basis(), BasisMismatch);
    CHECK(!is_hermitian(map, 1e-10));
    CHECK(!map.is_endomorphism());
}
