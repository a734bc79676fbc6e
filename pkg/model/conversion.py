'''
Analytic POE -> D-H conversion.

Every normalized joint twist is factored as exp(xibar q) = H Q(q) H^-1 with H = Rz(theta) Tz(d) Rx(alpha) Tx(a),
the remaining twists are re-expressed through Ad(H^-1) of the frames found so far and the residual tool
transform is split into Rz Tz Rx Tx . Rz Tz.
'''
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from model.kinematics import DhModel, DhRow, to_base
from model.liegroup import (CLASSIFY_EPS, Motion, NormalizedTwist, adjoint, inverse, rot_x, rot_z, safe_atan2,
                            screw_exp, wrap_angle)
from utils.errors import NotRotational, NotTranslational

logger = logging.getLogger('screwdh.conversion')

# the omega_3 = +-1 (parallel axis) branch triggers below this value of 1 - |omega_3|
PARALLEL_TOL = 1e-9
# right side of a sin(alpha) = h omega_3 - v_3 treated as zero below this
POLARITY_TOL = 1e-12
# sin(alpha_1) below this makes the tool rotation a pure Z rotation (or Z rotation after Rx(pi))
GIMBAL_TOL = 1e-9
# lateral tool offset below this is dropped in the gimbal case
LATERAL_TOL = 1e-11


@dataclass(frozen=True)
class DhFactor:
    theta: float
    d: float
    alpha: float
    a: float
    pitch: float = 0.0

    def matrix(self):
        return DhRow(self.theta, self.d, self.alpha, self.a).matrix()


def _factor_axis(w, v, h):
    """Solve Ad(H) [0 0 1 0 0 h] = [w v] for unit w."""
    w1, w2, w3 = w
    v1, v2, v3 = v
    if 1. - abs(w3) < PARALLEL_TOL:
        # adjacent parallel axes: d is free and set to zero
        theta = safe_atan2(v1 / w3, -v2 / w3)
        alpha = 0.0 if w3 > 0 else math.pi
        return DhFactor(theta, 0.0, alpha, math.hypot(v1, v2), h), 'parallel'
    polarity = h * w3 - v3
    sign = -1. if polarity < -POLARITY_TOL else 1.
    s = math.hypot(w1, w2)
    alpha = sign * math.atan2(s, w3)
    theta = math.atan2(sign * w1, -sign * w2)
    a = polarity / (sign * s)
    d = (w1 * v2 - w2 * v1) / (w1 ** 2 + w2 ** 2)
    return DhFactor(wrap_angle(theta), d, wrap_angle(alpha), a, h), 'general'


def factor_helical(xibar):
    """H with exp(xibar q) = H Rz(q) Tz(h q) H^-1, h = w . v."""
    if xibar.motion.kind is Motion.TRANSLATION:
        raise NotRotational(f'twist {xibar.twist.tolist()} has no rotation part')
    w, v = xibar.omega, xibar.v
    factor, _ = _factor_axis(w, v, float(w @ v))
    return factor


def factor_revolute(xibar):
    """H with exp(xibar q) = H Rz(q) H^-1."""
    if xibar.motion.kind is Motion.TRANSLATION:
        raise NotRotational(f'twist {xibar.twist.tolist()} has no rotation part')
    factor, _ = _factor_axis(xibar.omega, xibar.v, 0.0)
    return factor


def factor_prismatic(xibar):
    """H with exp(xibar q) = H Tz(q) H^-1, the axis runs through the origin of H."""
    if xibar.motion.kind is not Motion.TRANSLATION:
        raise NotTranslational(f'twist {xibar.twist.tolist()} has a rotation part')
    u1, u2, u3 = xibar.v
    # no d ambiguity here, a direction close to +-Z keeps its lateral part
    alpha = math.atan2(math.hypot(u1, u2), u3)
    theta = math.atan2(u1, -u2) if (u1 or u2) else 0.0
    return DhFactor(wrap_angle(theta), 0.0, alpha, 0.0, math.inf)


def decompose_transform(H):
    """
    Split H = Rz(theta1) Tz(d1) Rx(alpha1) Tx(a1) . Rz(theta2) Tz(d2).
    returns (DhFactor of the first part, theta2, d2)
    """
    R, t = H[:3, :3], H[:3, 3]
    s = math.hypot(R[0, 2], R[1, 2])
    if s < GIMBAL_TOL:
        alpha1 = 0.0 if R[2, 2] > 0 else math.pi
        psi = math.atan2(R[1, 0], R[0, 0])
        if math.hypot(t[0], t[1]) < LATERAL_TOL:
            theta1, theta2 = psi, 0.0
        else:
            # point the common normal at the lateral offset, the rest of the Z rotation goes to theta2
            theta1 = math.atan2(t[1], t[0])
            theta2 = psi - theta1 if alpha1 == 0.0 else theta1 - psi
        a1 = t[0] * math.cos(theta1) + t[1] * math.sin(theta1)
        return DhFactor(wrap_angle(theta1), float(t[2]), alpha1, a1), wrap_angle(theta2), 0.0
    alpha1 = math.atan2(s, R[2, 2])
    theta1 = math.atan2(R[0, 2], -R[1, 2])
    first = rot_z(theta1) @ rot_x(alpha1)
    rest = first.T @ R
    theta2 = math.atan2(rest[1, 0], rest[0, 0])
    basis = np.column_stack([[0., 0., 1.], [math.cos(theta1), math.sin(theta1), 0.], first[:, 2]])
    d1, a1, d2 = np.linalg.solve(basis, t)
    return DhFactor(wrap_angle(theta1), float(d1), wrap_angle(alpha1), float(a1)), wrap_angle(theta2), float(d2)


def decompose_tool(xi_t):
    return decompose_transform(screw_exp(xi_t))


def _coefficients(motion):
    if motion.kind is Motion.TRANSLATION:
        return 0, 1.0
    return 1, motion.pitch


def _factor(xibar):
    if xibar.motion.kind is Motion.TRANSLATION:
        return factor_prismatic(xibar), 'prismatic'
    w, v = xibar.omega, xibar.v
    h = float(w @ v) if xibar.motion.kind is Motion.HELICAL else 0.0
    return _factor_axis(w, v, h)


def poe_to_dh(model, eps=CLASSIFY_EPS):
    """
    Convert a POE model (any convention) into the D-H model with base and tool rows.
    Joint offsets are merged into theta (revolute / helical) or d (prismatic) of the row that follows the joint.
    """
    model = to_base(model)
    n = model.n
    factors, coeffs, qbars = [], [], []
    acc = np.eye(4)
    for i, joint in enumerate(model.joints):
        xin, qbar = joint.normalized(eps)
        local = NormalizedTwist(adjoint(inverse(acc)) @ xin.twist, xin.motion)
        factor, branch = _factor(local)
        logger.debug(f'joint {i + 1}: {xin.motion.kind.value} (h={xin.motion.pitch:.6g}), qbar={qbar:.9g}, '
                     f'{branch} branch, local twist {np.round(local.twist, 9).tolist()}')
        factors.append(factor)
        coeffs.append(_coefficients(xin.motion))
        qbars.append(qbar)
        acc = acc @ factor.matrix()

    residual = inverse(acc) @ screw_exp(model.tool_twist)
    last, theta_t, d_t = decompose_transform(residual)
    # rows following Q(q_i): the factor of joint i+1, then the first part of the tool split after the last joint
    statics = factors[1:] + [last]

    rows = []
    for i, (joint, static, (j, k), qbar) in enumerate(zip(model.joints, statics, coeffs, qbars)):
        shift = qbar * joint.offset if model.qbar_scales_offset else joint.offset
        rows.append(DhRow(static.theta + j * shift, static.d + k * shift, static.alpha, static.a,
                          j=j, k=k, qbar=qbar, offset_merged=joint.offset != 0.0))

    if n == 0:
        # no joints: the whole tool transform is the base row followed by the tool row
        base = last
    else:
        base = factors[0]
    base_row = DhRow(base.theta, base.d, base.alpha, base.a)
    return DhModel(base_row, tuple(rows), DhRow(theta_t, d_t))


def dh_report(model):
    """Table of the D-H rows in degrees, mm and mm/deg."""
    deg = 180. / math.pi
    records = [{'row': 'BH0', 'theta_deg': model.base_row.theta * deg, 'd_mm': model.base_row.d,
                'alpha_deg': model.base_row.alpha * deg, 'a_mm': model.base_row.a,
                'type': '', 'h_mm_per_deg': np.nan, 'qbar': np.nan}]
    for i, row in enumerate(model.rows):
        records.append({'row': f'{i}H{i + 1}', 'theta_deg': row.theta * deg, 'd_mm': row.d,
                        'alpha_deg': row.alpha * deg, 'a_mm': row.a, 'type': row.joint_type,
                        'h_mm_per_deg': row.k / deg if row.j == 1 else np.nan, 'qbar': row.qbar})
    records.append({'row': f'{model.n}HT', 'theta_deg': model.tool_row.theta * deg, 'd_mm': model.tool_row.d,
                    'alpha_deg': np.nan, 'a_mm': np.nan, 'type': '', 'h_mm_per_deg': np.nan, 'qbar': np.nan})
    return pd.DataFrame.from_records(records).set_index('row')
