'''
Joint census and counts of identifiable kinematic parameters, plus the two diagnostics that go with them:
adjacent parallel axes (where the D-H parameters jump) and D-H parameters that moved significantly
between a nominal and an actual conversion.
'''
import math
from dataclasses import dataclass, field

import numpy as np

from model.kinematics import DhModel, dh_to_poe, to_base
from model.liegroup import CLASSIFY_EPS, Motion, screw_exp

DH_ALLOCATION = ('Of the 6 frame parameters of the D-H model, 4 are allocated to the base-to-first-joint '
                 'transform (theta, d, alpha, a) and 2 to the last-joint-to-tool transform (theta, d).')


@dataclass(frozen=True)
class JointCensus:
    h_count: int = 0
    r_count: int = 0
    t_count: int = 0

    def __post_init__(self):
        assert min(self.h_count, self.r_count, self.t_count) >= 0, 'joint counts are nonnegative'

    @property
    def n(self):
        return self.h_count + self.r_count + self.t_count


@dataclass(frozen=True)
class IdentifiabilityReport:
    census: JointCensus
    c1: int
    c2: int
    c3: int
    breakdown: dict = field(default_factory=dict)
    dh_allocation: str = DH_ALLOCATION

    def to_text(self):
        c = self.census
        lines = [f'joints: h={c.h_count} r={c.r_count} t={c.t_count} n={c.n}',
                 f'C1 = 6r + 3t + 6 = {self.c1}',
                 f'C2 = 4r + 2t + 6 = {self.c2}',
                 f'C3 = 5h + 4r + 2t + n + 6 = {self.c3}']
        lines += [f'  {name}: {value}' for name, value in self.breakdown.items()]
        lines.append(self.dh_allocation)
        return '\n'.join(lines)


_ROW_KINDS = {'revolute': Motion.ROTATION, 'helical': Motion.HELICAL, 'prismatic': Motion.TRANSLATION}


def census(model, eps=CLASSIFY_EPS):
    """Joints of a POE model (declared classes win) or of a D-H model (row joint types) by motion class."""
    if isinstance(model, DhModel):
        kinds = [_ROW_KINDS[row.joint_type] for row in model.rows]
    else:
        kinds = [joint.motion(eps).kind for joint in model.joints]
    return JointCensus(h_count=kinds.count(Motion.HELICAL), r_count=kinds.count(Motion.ROTATION),
                       t_count=kinds.count(Motion.TRANSLATION))


def counts(joint_census):
    h, r, t, n = joint_census.h_count, joint_census.r_count, joint_census.t_count, joint_census.n
    breakdown = {'joint twists (5h + 4r + 2t)': 5 * h + 4 * r + 2 * t,
                 'normalization factors (n)': n,
                 'tool twist (6)': 6}
    return IdentifiabilityReport(census=joint_census,
                                 c1=6 * r + 3 * t + 6,
                                 c2=4 * r + 2 * t + 6,
                                 c3=sum(breakdown.values()),
                                 breakdown=breakdown)


def _axis_direction(joint, eps):
    xin, _ = joint.normalized(eps)
    return xin.v if xin.motion.kind is Motion.TRANSLATION else xin.omega


def parallel_axis_pairs(model, eps=CLASSIFY_EPS, tol=1e-9):
    """
    Adjacent axis pairs parallel at the initial configuration, base Z and tool Z included.
    Returns a list of pairs labelled 'base', 1 ... n, 'tool'.
    """
    model = dh_to_poe(model) if isinstance(model, DhModel) else to_base(model)
    labels = ['base'] + list(range(1, model.n + 1)) + ['tool']
    axes = [np.array([0., 0., 1.])] + [_axis_direction(joint, eps) for joint in model.joints]
    axes.append(screw_exp(model.tool_twist)[:3, 2])
    pairs = []
    for i in range(len(axes) - 1):
        if np.linalg.norm(np.cross(axes[i], axes[i + 1])) < tol:
            pairs.append((labels[i], labels[i + 1]))
    return pairs


def _row_items(dh):
    yield 'BH0', dh.base_row, ('theta', 'd', 'alpha', 'a')
    for i, row in enumerate(dh.rows):
        yield f'{i}H{i + 1}', row, ('theta', 'd', 'alpha', 'a')
    yield f'{dh.n}HT', dh.tool_row, ('theta', 'd')


def significant_changes(nominal, actual, angle_deg=60., length_mm=30.):
    """
    D-H parameters whose change between two models exceeds the thresholds.
    Returns a list of (row, parameter, nominal value, actual value), angles in degrees.
    """
    assert nominal.n == actual.n, 'models must have the same number of joints'
    deg = 180. / math.pi
    changes = []
    for (row_name, nom, params), (_, act, _) in zip(_row_items(nominal), _row_items(actual)):
        for p in params:
            x, y = getattr(nom, p), getattr(act, p)
            if p in ('theta', 'alpha'):
                delta = abs(math.remainder(y - x, 2 * math.pi)) * deg
                if delta > angle_deg:
                    changes.append((row_name, p, x * deg, y * deg))
            elif abs(y - x) > length_mm:
                changes.append((row_name, p, x, y))
    return changes
