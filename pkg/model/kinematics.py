'''
Robot model containers and forward kinematics for the POE (base / tool / local) and D-H conventions,
plus the reductions of the tool and local variants to the base formula.
'''
import enum
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from model.liegroup import (CLASSIFY_EPS, Motion, MotionClass, adjoint, as_twist, classify, elem, is_rigid,
                            normalize, screw_exp, twist_exp, twist_log, wrap_angle)
from utils.errors import ArityMismatch, ConventionMismatch, FrameCountMismatch, NotHelical, ZeroTwist


class Convention(enum.Enum):
    BASE = 'base'
    TOOL = 'tool'
    LOCAL = 'local'


@dataclass(frozen=True)
class JointSpec:
    twist: np.ndarray
    offset: float = 0.0
    declared: Optional[Motion] = None

    def __post_init__(self):
        xi = as_twist(self.twist)
        if not np.any(xi):
            raise ZeroTwist('a joint twist cannot be zero')
        if self.declared is Motion.HELICAL and np.any(xi[:3]) and xi[:3] @ xi[3:] == 0.0:
            raise NotHelical(f'twist {xi.tolist()} declared helical has zero pitch')
        xi.flags.writeable = False
        object.__setattr__(self, 'twist', xi)
        object.__setattr__(self, 'offset', float(self.offset))

    def motion(self, eps=CLASSIFY_EPS):
        """Motion class of the joint, the declared class wins over the numeric one."""
        numeric = classify(self.twist, eps)
        if self.declared is None or self.declared is numeric.kind:
            return numeric
        if self.declared is Motion.ROTATION:
            return MotionClass.rotation()
        if self.declared is Motion.TRANSLATION:
            return MotionClass.translation()
        # declared helical but numerically pure rotation
        w = self.twist[:3]
        return MotionClass.helical(float(w @ self.twist[3:]) / float(w @ w))

    def normalized(self, eps=CLASSIFY_EPS):
        """
        Normalized twist and normalization factor. A joint declared rotational moves along the
        zero-pitch part of its twist, so FK and conversion agree on it.
        """
        xi = self.twist
        w = xi[:3]
        if self.declared is Motion.ROTATION and np.any(w):
            xi = np.concatenate([w, xi[3:] - (float(w @ xi[3:]) / float(w @ w)) * w])
        return normalize(xi, eps, motion=self.motion(eps))


@dataclass(frozen=True)
class PoeModel:
    """
    convention: base, tool or local POE formula
    joints: ordered joint twists (unnormalized allowed) with offsets
    tool_twist: initial tool placement xi_T (base / tool conventions)
    local_frames: H_1 ... H_{n+1} between adjacent local frames (local convention)
    qbar_scales_offset: if True the normalization factor multiplies (q + dq), else only q
    """
    convention: Convention
    joints: Tuple[JointSpec, ...]
    tool_twist: Optional[np.ndarray] = None
    local_frames: Optional[Tuple[np.ndarray, ...]] = None
    qbar_scales_offset: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'joints', tuple(self.joints))
        if self.convention is Convention.LOCAL:
            frames = tuple(np.array(H, dtype=float) for H in (self.local_frames or ()))
            assert all(is_rigid(H) for H in frames), 'local frames must be rigid transforms'
            if len(frames) != len(self.joints) + 1:
                raise FrameCountMismatch(f'local POE model with {len(self.joints)} joints needs '
                                         f'{len(self.joints) + 1} frames, got {len(frames)}')
            object.__setattr__(self, 'local_frames', frames)
        else:
            if self.tool_twist is None:
                raise ConventionMismatch(f'{self.convention.value} POE model needs a tool twist')
            xi_t = as_twist(self.tool_twist)
            xi_t.flags.writeable = False
            object.__setattr__(self, 'tool_twist', xi_t)

    @property
    def n(self):
        return len(self.joints)

    def joint_units(self, eps=CLASSIFY_EPS):
        return [joint.motion(eps).unit for joint in self.joints]


@dataclass(frozen=True)
class DhRow:
    """
    One D-H transform Rz(theta) Tz(d) Rx(alpha) Tx(a). Rows that follow a joint also carry the
    joint-type coefficients (j, k) of Q(q) = Rz(j q) Tz(k q) and the normalization factor qbar
    of the joint variable.
    """
    theta: float = 0.0
    d: float = 0.0
    alpha: float = 0.0
    a: float = 0.0
    j: int = 0
    k: float = 0.0
    qbar: float = 1.0
    offset_merged: bool = False

    def __post_init__(self):
        assert self.j in (0, 1), f'j is 0 or 1, got {self.j}'
        if self.j == 0:
            assert self.k in (0.0, 1.0), f'a prismatic row has k = 1, got {self.k}'
        object.__setattr__(self, 'theta', wrap_angle(self.theta))
        object.__setattr__(self, 'alpha', wrap_angle(self.alpha))
        for name in ('d', 'a', 'k', 'qbar'):
            object.__setattr__(self, name, float(getattr(self, name)))

    @property
    def joint_type(self):
        if self.j == 0:
            return 'prismatic' if self.k == 1.0 else None
        return 'revolute' if self.k == 0.0 else 'helical'

    def matrix(self):
        return (elem('Z', 'rotate', self.theta) @ elem('Z', 'translate', self.d)
                @ elem('X', 'rotate', self.alpha) @ elem('X', 'translate', self.a))


@dataclass(frozen=True)
class DhModel:
    base_row: DhRow
    rows: Tuple[DhRow, ...]
    tool_row: DhRow = field(default_factory=DhRow)

    def __post_init__(self):
        object.__setattr__(self, 'rows', tuple(self.rows))
        assert self.tool_row.alpha == 0.0 and self.tool_row.a == 0.0, 'the tool row has only theta and d'
        for i, row in enumerate(self.rows):
            assert row.joint_type is not None, f'row {i + 1} does not describe a joint'

    @property
    def n(self):
        return len(self.rows)


def q_screw(j, k, q):
    return elem('Z', 'rotate', j * q) @ elem('Z', 'translate', k * q)


def _check_arity(n, q):
    q = np.asarray(q, dtype=float).reshape(-1)
    if q.shape[0] != n:
        raise ArityMismatch(f'model has {n} joints, got {q.shape[0]} joint values')
    return q


def poe_fk(model, q, eps=CLASSIFY_EPS):
    if model.convention is not Convention.BASE:
        raise ConventionMismatch(f'poe_fk evaluates the base formula, reduce the {model.convention.value} model first')
    q = _check_arity(model.n, q)
    H = np.eye(4)
    for joint, qi in zip(model.joints, q):
        xin, qbar = joint.normalized(eps)
        if model.qbar_scales_offset:
            H = H @ twist_exp(xin, qbar * (qi + joint.offset))
        else:
            H = H @ twist_exp(xin, qbar * qi + joint.offset)
    return H @ screw_exp(model.tool_twist)


def dh_fk(model, q):
    q = _check_arity(model.n, q)
    H = model.base_row.matrix()
    for row, qi in zip(model.rows, q):
        H = H @ q_screw(row.j, row.k, row.qbar * qi) @ row.matrix()
    return H @ model.tool_row.matrix()


def static_product(model):
    """Product of all static D-H rows, the pose at q = 0."""
    H = model.base_row.matrix()
    for row in model.rows:
        H = H @ row.matrix()
    return H @ model.tool_row.matrix()


def tool_to_base(model):
    if model.convention is not Convention.TOOL:
        raise ConventionMismatch(f'expected a tool POE model, got {model.convention.value}')
    ad = adjoint(screw_exp(model.tool_twist))
    joints = [replace(joint, twist=ad @ joint.twist) for joint in model.joints]
    return replace(model, convention=Convention.BASE, joints=tuple(joints))


def local_to_base(model):
    if model.convention is not Convention.LOCAL:
        raise ConventionMismatch(f'expected a local POE model, got {model.convention.value}')
    if len(model.local_frames) != model.n + 1:
        raise FrameCountMismatch(f'expected {model.n + 1} local frames, got {len(model.local_frames)}')
    acc = np.eye(4)
    joints = []
    for joint, H in zip(model.joints, model.local_frames):
        acc = acc @ H
        joints.append(replace(joint, twist=adjoint(acc) @ joint.twist))
    acc = acc @ model.local_frames[-1]
    return PoeModel(Convention.BASE, tuple(joints), tool_twist=twist_log(acc), local_frames=None,
                    qbar_scales_offset=model.qbar_scales_offset)


def to_base(model):
    if model.convention is Convention.TOOL:
        return tool_to_base(model)
    if model.convention is Convention.LOCAL:
        return local_to_base(model)
    return model


_CANONICAL = {'revolute': Motion.ROTATION, 'helical': Motion.HELICAL, 'prismatic': Motion.TRANSLATION}


def dh_to_poe(model):
    """Base POE model FK-equivalent to a D-H model, joint offsets already live in the rows."""
    acc = model.base_row.matrix()
    joints = []
    for row in model.rows:
        canonical = np.array([0., 0., row.j, 0., 0., row.k])
        joints.append(JointSpec(row.qbar * (adjoint(acc) @ canonical), 0.0, _CANONICAL[row.joint_type]))
        acc = acc @ row.matrix()
    acc = acc @ model.tool_row.matrix()
    return PoeModel(Convention.BASE, tuple(joints), tool_twist=twist_log(acc))

