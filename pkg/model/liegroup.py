'''
SE(3) / se(3) machinery: twists, their classification and normalization, the exponential map,
the adjoint and the elementary screws used by the D-H rows.

Conventions: twists are 6-vectors (omega, v); transforms are 4x4 homogeneous numpy arrays;
radians and millimeters everywhere, pitch in mm/rad.
'''
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial.transform import Rotation

from utils.errors import ZeroTwist, NonUnitDirection, NotRotational, NotTranslational

CLASSIFY_EPS = 1e-8
UNIT_TOL = 1e-12
# orthonormality tolerance of a rigid transform read from outside
RIGID_TOL = 1e-9
GIMBAL_TOL = 1e-9
# below this norm an atan2 argument pair is treated as (0, 0)
DEGENERATE = 1e-11
# screw_exp switches to the Taylor series of its coefficients below this rotation angle
SERIES_ANGLE = 1e-3


class Motion(enum.Enum):
    ROTATION = 'rotation'
    TRANSLATION = 'translation'
    HELICAL = 'helical'


@dataclass(frozen=True)
class MotionClass:
    kind: Motion
    pitch: float

    def __post_init__(self):
        if self.kind is Motion.ROTATION and self.pitch != 0.0:
            raise ValueError(f'a rotation has zero pitch, got {self.pitch}')
        if self.kind is Motion.TRANSLATION and not math.isinf(self.pitch):
            raise ValueError(f'a translation has infinite pitch, got {self.pitch}')

    @property
    def unit(self):
        """Unit of the joint variable driving this motion."""
        return 'mm' if self.kind is Motion.TRANSLATION else 'rad'

    @classmethod
    def rotation(cls):
        return cls(Motion.ROTATION, 0.0)

    @classmethod
    def translation(cls):
        return cls(Motion.TRANSLATION, math.inf)

    @classmethod
    def helical(cls, pitch):
        return cls(Motion.HELICAL, float(pitch))


@dataclass(frozen=True)
class NormalizedTwist:
    twist: np.ndarray
    motion: MotionClass

    def __post_init__(self):
        xi = as_twist(self.twist)
        xi.flags.writeable = False
        object.__setattr__(self, 'twist', xi)

    @property
    def omega(self):
        return self.twist[:3]

    @property
    def v(self):
        return self.twist[3:]


class EulerZYX(NamedTuple):
    rz: float
    ry: float
    rx: float
    gimbal_lock: bool


def as_twist(xi):
    xi = np.array(xi, dtype=float).reshape(-1)
    assert xi.shape == (6,), f'a twist has 6 components, got {xi.shape[0]}'
    assert np.all(np.isfinite(xi)), 'twist components must be finite'
    return xi


def wrap_angle(angle):
    """Wrap to (-pi, pi], -pi maps to +pi."""
    wrapped = math.remainder(float(angle), 2 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2 * math.pi
    return wrapped


def safe_atan2(y, x):
    if math.hypot(y, x) < DEGENERATE:
        return 0.0
    return wrap_angle(math.atan2(y, x))


def skew(v):
    x, y, z = np.asarray(v, dtype=float).reshape(3)
    return np.array([[0., -z, y],
                     [z, 0., -x],
                     [-y, x, 0.]])


def hat(xi):
    """4x4 se(3) matrix of a twist."""
    xi = as_twist(xi)
    out = np.zeros((4, 4))
    out[:3, :3] = skew(xi[:3])
    out[:3, 3] = xi[3:]
    return out


def transform(rotation=None, translation=None):
    H = np.eye(4)
    if rotation is not None:
        H[:3, :3] = rotation
    if translation is not None:
        H[:3, 3] = np.asarray(translation, dtype=float).reshape(3)
    return H


def inverse(H):
    R = H[:3, :3]
    return transform(R.T, -R.T @ H[:3, 3])


def is_rigid(H, tol=RIGID_TOL):
    """Finite 4x4 with an orthonormal, right-handed rotation block and a [0 0 0 1] last row."""
    H = np.asarray(H, dtype=float)
    if H.shape != (4, 4) or not np.all(np.isfinite(H)):
        return False
    R = H[:3, :3]
    return (np.allclose(H[3], [0., 0., 0., 1.], rtol=0, atol=tol)
            and np.allclose(R.T @ R, np.eye(3), rtol=0, atol=tol)
            and np.linalg.det(R) > 0)


def rot_x(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[1., 0., 0.], [0., c, -s], [0., s, c]])


def rot_y(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, 0., s], [0., 1., 0.], [-s, 0., c]])


def rot_z(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.], [s, c, 0.], [0., 0., 1.]])


_AXES = {'X': 0, 'Z': 2}
_ROTATIONS = {'X': rot_x, 'Z': rot_z}


def elem(axis, kind, value):
    """
    Elementary screw: rotation about / translation along X or Z.
    axis: 'X' or 'Z'
    kind: 'rotate' (value in rad) or 'translate' (value in mm)
    """
    axis = axis.upper()
    assert axis in _AXES, f'elementary screws are about X or Z, got {axis}'
    if kind == 'rotate':
        return transform(rotation=_ROTATIONS[axis](value))
    elif kind == 'translate':
        t = np.zeros(3)
        t[_AXES[axis]] = value
        return transform(translation=t)
    raise ValueError(f"kind must be 'rotate' or 'translate', got {kind}")


def classify(xi, eps=CLASSIFY_EPS):
    xi = as_twist(xi)
    assert eps > 0
    w_norm = np.linalg.norm(xi[:3])
    if w_norm < eps:
        if np.linalg.norm(xi[3:]) < eps:
            raise ZeroTwist(f'both parts of twist {xi.tolist()} are below {eps}')
        return MotionClass.translation()
    pitch = float(xi[:3] @ xi[3:]) / w_norm ** 2
    if abs(pitch) < eps:
        return MotionClass.rotation()
    return MotionClass.helical(pitch)


def normalize(xi, eps=CLASSIFY_EPS, motion=None):
    """
    Split a twist into its normalized twist and normalization factor, xi = xibar * qbar.
    motion: optional MotionClass overriding the numeric classification
    """
    xi = as_twist(xi)
    numeric = classify(xi, eps)
    if motion is None:
        motion = numeric
    elif motion.kind is Motion.TRANSLATION and numeric.kind is not Motion.TRANSLATION:
        raise NotTranslational(f'twist {xi.tolist()} declared translational has a rotation part')
    elif motion.kind is not Motion.TRANSLATION and numeric.kind is Motion.TRANSLATION:
        raise NotRotational(f'twist {xi.tolist()} declared {motion.kind.value} has no rotation part')
    if numeric.kind is Motion.TRANSLATION:
        qbar = float(np.linalg.norm(xi[3:]))
    else:
        qbar = float(np.linalg.norm(xi[:3]))
    return NormalizedTwist(xi / qbar, motion), qbar


def twist_from_axis(direction, point, pitch=0.0):
    direction = np.asarray(direction, dtype=float).reshape(3)
    point = np.asarray(point, dtype=float).reshape(3)
    if abs(np.linalg.norm(direction) - 1.) > UNIT_TOL:
        raise NonUnitDirection(f'axis direction {direction.tolist()} is not a unit vector')
    v = np.cross(point, direction) + pitch * direction
    motion = MotionClass.rotation() if pitch == 0 else MotionClass.helical(pitch)
    return NormalizedTwist(np.concatenate([direction, v]), motion)


def twist_exp(xin, q):
    """exp(hat(xibar) q) evaluated in closed form for the motion class."""
    w, v = xin.omega, xin.v
    if xin.motion.kind is Motion.TRANSLATION:
        return transform(translation=v * q)
    W = skew(w)
    R = np.eye(3) + math.sin(q) * W + (1. - math.cos(q)) * (W @ W)
    t = (np.eye(3) - R) @ np.cross(w, v) + w * (w @ v) * q
    return transform(R, t)


def screw_exp(xi):
    """
    Exponential of an unnormalized twist, identity for the zero twist.
    Any nonzero rotation part is kept, however small: no classification threshold applies.
    """
    xi = as_twist(xi)
    w, v = xi[:3], xi[3:]
    theta = float(np.linalg.norm(w))
    if theta == 0.0:
        return transform(translation=v)
    if theta < SERIES_ANGLE:
        t2 = theta ** 2
        a = 1. - t2 / 6. + t2 ** 2 / 120.
        b = 0.5 - t2 / 24. + t2 ** 2 / 720.
        c = 1. / 6. - t2 / 120. + t2 ** 2 / 5040.
    else:
        a = math.sin(theta) / theta
        b = (1. - math.cos(theta)) / theta ** 2
        c = (theta - math.sin(theta)) / theta ** 3
    W = skew(w)
    W2 = W @ W
    R = np.eye(3) + a * W + b * W2
    return transform(R, (np.eye(3) + b * W + c * W2) @ v)


def twist_log(H):
    """Unnormalized twist xi with screw_exp(xi) == H, rotation angle in [0, pi]."""
    rotvec = Rotation.from_matrix(H[:3, :3]).as_rotvec()
    theta = float(np.linalg.norm(rotvec))
    W = skew(rotvec)
    if theta < 1e-6:
        coef = 1. / 12. + theta ** 2 / 720.
    else:
        coef = (1. - theta * math.sin(theta) / (2. * (1. - math.cos(theta)))) / theta ** 2
    v_inv = np.eye(3) - 0.5 * W + coef * (W @ W)
    return np.concatenate([rotvec, v_inv @ H[:3, 3]])


def adjoint(H):
    R, t = H[:3, :3], H[:3, 3]
    ad = np.zeros((6, 6))
    ad[:3, :3] = R
    ad[3:, :3] = skew(t) @ R
    ad[3:, 3:] = R
    return ad


def euler_zyx(R):
    """
    Decompose R = Rz(rz) Ry(ry) Rx(rx). At gimbal lock (|cos ry| < 1e-9) rx is set to 0
    and the whole residual rotation goes to rz.
    """
    R = np.asarray(R, dtype=float)[:3, :3]
    sy = -R[2, 0]
    cy = math.hypot(R[0, 0], R[1, 0])
    ry = wrap_angle(math.atan2(sy, cy))
    if cy < GIMBAL_TOL:
        # R[0,1], R[1,1] only depend on rz -/+ rx once cos(ry) vanishes
        rz = safe_atan2(-R[0, 1], R[1, 1])
        return EulerZYX(rz, ry, 0.0, True)
    rz = safe_atan2(R[1, 0], R[0, 0])
    rx = safe_atan2(R[2, 1], R[2, 2])
    return EulerZYX(rz, ry, rx, False)
