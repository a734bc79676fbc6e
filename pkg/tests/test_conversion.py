import logging
import math

import numpy as np
from pytest import approx, mark, raises

from model.conversion import (decompose_tool, decompose_transform, dh_report, factor_helical, factor_prismatic,
                              factor_revolute, poe_to_dh)
from model.kinematics import Convention, DhModel, DhRow, JointSpec, PoeModel, dh_fk, dh_to_poe, poe_fk
from model.liegroup import (Motion, MotionClass, NormalizedTwist, adjoint, inverse, rot_x, rot_z, screw_exp,
                            transform, twist_exp, twist_from_axis)
from model.validation import ValidationConfig, validate
from utils.errors import NotRotational, NotTranslational

DEG = math.pi / 180.

# theta (deg), d (mm), alpha (deg), a (mm)
NOMINAL_PUMA_ROWS = [(0, 0, 0, 0),
                     (0, 0, 90, 0),
                     (0, 0, 0, 100),
                     (0, -50, 90, 150),
                     (180, 20, 90, 0),
                     (180, 0, 90, 0),
                     (0, 0, 180, 0)]


def angle_close(x, y, tol=1e-9):
    return abs(math.remainder(x - y, 2 * math.pi)) < tol


def q_of(factor_pitch, q):
    if math.isinf(factor_pitch):
        return transform(translation=[0, 0, q])
    return transform(rot_z(q), [0, 0, factor_pitch * q])


def test_nominal_puma_rows(puma_nominal):
    dh = poe_to_dh(puma_nominal)
    rows = [dh.base_row] + list(dh.rows)
    for row, (theta, d, alpha, a) in zip(rows, NOMINAL_PUMA_ROWS):
        assert angle_close(row.theta, theta * DEG)
        assert row.d == approx(d, abs=1e-9)
        assert angle_close(row.alpha, alpha * DEG)
        assert row.a == approx(a, abs=1e-9)
    assert angle_close(dh.tool_row.theta, 0.)
    assert dh.tool_row.d == approx(0., abs=1e-9)
    assert all(row.joint_type == 'revolute' for row in dh.rows)
    assert [row.qbar for row in dh.rows] == approx([1.] * 6)


@mark.parametrize("fixture_name", ("puma_nominal", "puma_actual"))
def test_puma_fk_equivalence(fixture_name, request):
    poe = request.getfixturevalue(fixture_name)
    records, summary = validate(poe, poe_to_dh(poe), ValidationConfig(samples=100, seed=7))
    assert len(records) == 100
    assert summary['e_R_rad']['max'] < 1e-10
    assert summary['e_t_mm']['max'] < 1e-10


def test_actual_puma_spot_values(puma_actual):
    dh = poe_to_dh(puma_actual)
    assert dh.rows[1].qbar == approx(1.00002, abs=1e-6)
    assert dh.rows[5].joint_type == 'helical'
    assert dh.rows[5].k * DEG == approx(0.0502, abs=5e-4)
    assert dh.rows[0].joint_type == 'revolute'
    assert dh.rows[1].joint_type == 'revolute'
    assert dh.base_row.theta / DEG == approx(63.4349, abs=1e-3)
    assert dh.base_row.d == approx(1.0, abs=1e-3)
    assert dh.base_row.alpha / DEG == approx(2.5632, abs=1e-3)
    assert dh.base_row.a == approx(0., abs=1e-9)


def test_revolute_factor_conjugation(random_unit, rng):
    for _ in range(100):
        xin = twist_from_axis(random_unit(), rng.uniform(-10., 10., 3))
        H = factor_revolute(xin).matrix()
        assert H[:3, 2] == approx(xin.omega, abs=1e-10)
        for q in rng.uniform(-math.pi, math.pi, 3):
            assert np.allclose(H @ transform(rot_z(q)) @ inverse(H), twist_exp(xin, q), rtol=0, atol=1e-10)


def test_helical_factor_conjugation(random_unit, rng):
    for _ in range(100):
        pitch = float(rng.uniform(-5., 5.))
        xin = twist_from_axis(random_unit(), rng.uniform(-10., 10., 3), pitch)
        factor = factor_helical(xin)
        assert factor.pitch == approx(pitch, abs=1e-12)
        H = factor.matrix()
        for q in rng.uniform(-math.pi, math.pi, 3):
            assert np.allclose(H @ q_of(pitch, q) @ inverse(H), twist_exp(xin, q), rtol=0, atol=1e-10)


def test_prismatic_factor_conjugation(random_unit, rng):
    for _ in range(100):
        xin = NormalizedTwist(np.concatenate([np.zeros(3), random_unit()]), MotionClass.translation())
        factor = factor_prismatic(xin)
        assert factor.d == 0. and factor.a == 0.
        H = factor.matrix()
        for q in rng.uniform(-100., 100., 3):
            assert np.allclose(H @ q_of(math.inf, q) @ inverse(H), twist_exp(xin, q), rtol=0, atol=1e-10)


def test_factor_class_errors():
    translation = NormalizedTwist([0, 0, 0, 1, 0, 0], MotionClass.translation())
    with raises(NotRotational):
        factor_revolute(translation)
    with raises(NotRotational):
        factor_helical(translation)
    with raises(NotTranslational):
        factor_prismatic(twist_from_axis([0, 0, 1], [0, 0, 0]))


def test_factor_revolute_example():
    xin = NormalizedTwist([0, 0, -1, -50, 250, 0], MotionClass.rotation())
    factor = factor_revolute(xin)
    assert factor.d == 0.
    assert angle_close(factor.alpha, math.pi)
    assert factor.a == approx(math.hypot(50, 250))
    assert factor.theta == approx(math.atan2(50, 250))


@mark.parametrize("sign", (1., -1.))
def test_parallel_axis_branch(sign, rng):
    for _ in range(100):
        pitch = float(rng.choice([0., rng.uniform(-5., 5.)]))
        v1, v2 = rng.uniform(-100., 100., 2)
        motion = MotionClass.rotation() if pitch == 0. else MotionClass.helical(pitch)
        xin = NormalizedTwist([0, 0, sign, v1, v2, sign * pitch], motion)
        factor = factor_helical(xin)
        assert factor.d == 0.
        H = factor.matrix()
        for q in rng.uniform(-math.pi, math.pi, 3):
            assert np.allclose(H @ q_of(pitch, q) @ inverse(H), twist_exp(xin, q), rtol=0, atol=1e-10)


def test_decompose_transform_recomposition(random_transform):
    for _ in range(100):
        H = random_transform()
        first, theta2, d2 = decompose_transform(H)
        recomposed = first.matrix() @ transform(rot_z(theta2), [0, 0, d2])
        assert np.allclose(recomposed, H, rtol=0, atol=1e-10)


@mark.parametrize("rotation translation".split(),
                  ((rot_z(0.3), [1., 2., 3.]),
                   (rot_z(0.3), [0., 0., 3.]),
                   (rot_z(-2.) @ rot_x(math.pi), [4., -1., 2.]),
                   (rot_z(1.1) @ rot_x(math.pi), [0., 0., -5.]),
                   (np.eye(3), [0., 0., 0.])))
def test_decompose_transform_gimbal(rotation, translation):
    H = transform(rotation, translation)
    first, theta2, d2 = decompose_transform(H)
    assert d2 == 0.
    assert math.sin(first.alpha) == approx(0., abs=1e-12)
    recomposed = first.matrix() @ transform(rot_z(theta2), [0, 0, d2])
    assert np.allclose(recomposed, H, rtol=0, atol=1e-12)


def test_decompose_tool_zero_twist():
    first, theta2, d2 = decompose_tool(np.zeros(6))
    assert (first.theta, first.d, first.alpha, first.a, theta2, d2) == (0., 0., 0., 0., 0., 0.)


def test_single_revolute_joint_is_all_zero():
    model = PoeModel(Convention.BASE, (JointSpec([0, 0, 1, 0, 0, 0]),), tool_twist=np.zeros(6))
    dh = poe_to_dh(model)
    for row in (dh.base_row, dh.rows[0], dh.tool_row):
        assert (row.theta, row.d, row.alpha, row.a) == approx((0., 0., 0., 0.), abs=1e-12)


def test_no_joints_conversion(random_twist):
    xi_t = random_twist()
    dh = poe_to_dh(PoeModel(Convention.BASE, (), tool_twist=xi_t))
    assert dh.n == 0
    assert np.allclose(dh_fk(dh, []), screw_exp(xi_t), rtol=0, atol=1e-10)


def test_mixed_joint_conversion(rng):
    joints = (JointSpec([0, 0, 2., 0, 0, 0], offset=0.3),
              JointSpec([0, 0, 0, 3., 0, 0], offset=12.),
              JointSpec([0.3, -0.4, 0.5, 10., 20., -30.], offset=-0.4),
              JointSpec([0, 1., 0, 0, 5e-10, 0.5], declared=Motion.HELICAL),
              JointSpec([0, 0, 0, 0.2, 0.3, 0.4]))
    tool = np.array([0.1, 0.2, -0.3, 40., 50., 60.])
    for scales in (True, False):
        poe = PoeModel(Convention.BASE, joints, tool_twist=tool, qbar_scales_offset=scales)
        dh = poe_to_dh(poe)
        assert [row.joint_type for row in dh.rows] == ['revolute', 'prismatic', 'helical', 'helical', 'prismatic']
        assert [row.offset_merged for row in dh.rows] == [True, True, True, False, False]
        for _ in range(20):
            q = rng.uniform(-math.pi, math.pi, 5)
            assert np.allclose(dh_fk(dh, q), poe_fk(poe, q), rtol=0, atol=1e-9)


def test_tool_and_local_models_convert(puma_actual, rng):
    G = screw_exp(puma_actual.tool_twist)
    tool_model = PoeModel(Convention.TOOL,
                          tuple(JointSpec(adjoint(inverse(G)) @ joint.twist) for joint in puma_actual.joints),
                          tool_twist=puma_actual.tool_twist)
    dh = poe_to_dh(tool_model)
    for _ in range(20):
        q = rng.uniform(-math.pi, math.pi, 6)
        assert np.allclose(dh_fk(dh, q), poe_fk(puma_actual, q), rtol=0, atol=1e-9)


def test_dh_poe_dh_roundtrip(rng):
    for _ in range(30):
        n = int(rng.integers(1, 7))
        rows = []
        for _ in range(n):
            j, k = ((1, 0.), (0, 1.), (1, float(rng.uniform(-5., 5.))))[int(rng.integers(0, 3))]
            theta, alpha = rng.uniform(-math.pi, math.pi, 2)
            d, a = rng.uniform(-50., 50., 2)
            rows.append(DhRow(theta, d, alpha, a, j=j, k=k, qbar=float(rng.uniform(0.5, 2.))))
        base = DhRow(*rng.uniform(-1., 1., 4))
        original = DhModel(base, tuple(rows), DhRow(float(rng.uniform(-3., 3.)), float(rng.uniform(-9., 9.))))
        converted = poe_to_dh(dh_to_poe(original))
        for _ in range(5):
            q = rng.uniform(-math.pi, math.pi, n)
            assert np.allclose(dh_fk(converted, q), dh_fk(original, q), rtol=0, atol=1e-8)


def test_conversion_trace_is_logged(puma_nominal, caplog):
    caplog.set_level(logging.DEBUG, logger='screwdh.conversion')
    poe_to_dh(puma_nominal)
    messages = [r.getMessage() for r in caplog.records if r.name == 'screwdh.conversion']
    assert len(messages) == 6
    assert 'parallel branch' in messages[0]
    assert 'general branch' in messages[1]


def test_dh_report(puma_actual):
    report = dh_report(poe_to_dh(puma_actual))
    assert list(report.index) == ['BH0', '0H1', '1H2', '2H3', '3H4', '4H5', '5H6', '6HT']
    assert report.loc['1H2', 'qbar'] == approx(1.00002, abs=1e-6)
    assert report.loc['5H6', 'h_mm_per_deg'] == approx(0.0502, abs=5e-4)
    assert report.loc['5H6', 'type'] == 'helical'
    assert report.loc['BH0', 'theta_deg'] == approx(63.4349, abs=1e-3)


def test_prismatic_factor_near_z(rng):
    for sign in (1., -1.):
        for _ in range(50):
            lateral = 3e-5 * rng.uniform(-1., 1., 2)
            u = np.array([lateral[0], lateral[1], sign])
            xin = NormalizedTwist(np.concatenate([np.zeros(3), u / np.linalg.norm(u)]), MotionClass.translation())
            H = factor_prismatic(xin).matrix()
            for q in rng.uniform(-100., 100., 3):
                assert np.allclose(H @ q_of(math.inf, q) @ inverse(H), twist_exp(xin, q), rtol=0, atol=1e-10)


@mark.parametrize("sign alpha".split(), ((1., 0.), (-1., math.pi)))
def test_prismatic_factor_exact_z(sign, alpha):
    factor = factor_prismatic(NormalizedTwist([0, 0, 0, 0, 0, sign], MotionClass.translation()))
    assert factor.theta == 0.
    assert factor.alpha == approx(alpha, abs=1e-15)


def test_near_z_prismatic_joint_fk(rng):
    poe = PoeModel(Convention.BASE, (JointSpec([0, 0, 0, 3e-5, 0, 1.]),), tool_twist=np.zeros(6))
    dh = poe_to_dh(poe)
    assert dh.rows[0].joint_type == 'prismatic'
    for q in rng.uniform(-100., 100., 10):
        assert np.allclose(dh_fk(dh, [q]), poe_fk(poe, [q]), rtol=0, atol=1e-10)


def test_declared_rotation_with_pitch_converts(rng):
    joints = (JointSpec([0, 0, 1., 0, 0, 0.01], declared=Motion.ROTATION),
              JointSpec([0, 1., 0, 5., -0.02, 0], offset=0.2, declared=Motion.ROTATION))
    poe = PoeModel(Convention.BASE, joints, tool_twist=np.array([0., 0., 0., 10., 0., 5.]))
    dh = poe_to_dh(poe)
    assert [row.joint_type for row in dh.rows] == ['revolute', 'revolute']
    for _ in range(20):
        q = rng.uniform(-math.pi, math.pi, 2)
        assert np.allclose(dh_fk(dh, q), poe_fk(poe, q), rtol=0, atol=1e-10)


def test_decompose_tool_small_rotation():
    xi_t = np.array([5e-9, 0., 0., 10., 0., 30.])
    first, theta2, d2 = decompose_tool(xi_t)
    recomposed = first.matrix() @ transform(rot_z(theta2), [0, 0, d2])
    assert np.allclose(recomposed, screw_exp(xi_t), rtol=0, atol=1e-12)
    assert recomposed[2, 1] == approx(5e-9, rel=1e-6)


def test_small_tool_rotation_converts(rng):
    poe = PoeModel(Convention.BASE, (JointSpec([0, 0, 1., 0, 0, 0]), JointSpec([0, 0, 0, 1., 0, 0])),
                   tool_twist=np.array([0., 4e-9, 0., 0., 0., 500.]))
    dh = poe_to_dh(poe)
    for _ in range(10):
        q = rng.uniform(-math.pi, math.pi, 2)
        assert np.allclose(dh_fk(dh, q), poe_fk(poe, q), rtol=0, atol=1e-10)
    assert poe_fk(poe, [0., 0.])[0, 3] == approx(1e-6, rel=1e-6)
