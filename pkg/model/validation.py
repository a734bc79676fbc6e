'''
Randomized FK-equivalence experiment: sample joint configurations uniformly, evaluate a POE model and a D-H model
at each of them and record the rotation / translation discrepancy of the two poses.
'''
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from datasets.sampler import ConfigurationSampler
from model.kinematics import dh_fk, poe_fk, to_base
from model.liegroup import CLASSIFY_EPS, euler_zyx
from utils.errors import ArityMismatch
from utils.utils import error_summary

logger = logging.getLogger('screwdh')

RECORD_COLUMNS = ['index', 'e_R_rad', 'e_t_mm']


@dataclass(frozen=True)
class ValidationConfig:
    """
    samples: number of configurations
    seed: generator seed, the same seed gives the same configurations and records
    joint_range: sampling interval of every joint variable
    tolerance: max error allowed on both metrics, None disables the check
    num_workers: threads evaluating samples, records stay in index order
    progress: display a tqdm bar
    """
    samples: int = 100
    seed: Optional[int] = None
    joint_range: Tuple[float, float] = (-math.pi, math.pi)
    tolerance: Optional[float] = None
    num_workers: int = 1
    progress: bool = False

    def __post_init__(self):
        assert self.samples >= 1, f'samples must be positive, got {self.samples}'
        low, high = self.joint_range
        assert high > low, f'joint range must be nonempty, got {self.joint_range}'
        assert self.num_workers >= 1, f'num_workers must be positive, got {self.num_workers}'

    @classmethod
    def from_args(cls, args):
        return cls(samples=args.samples, seed=args.seed, joint_range=(args.joint_low, args.joint_high),
                   tolerance=args.tolerance, num_workers=args.num_workers, progress=not args.no_progress_bar)


class ErrorRecord(NamedTuple):
    index: int
    e_R: float
    e_t: float


def pose_errors(H_dh, H_poe):
    """(e_R, e_t): norm of the ZYX Euler angles of R_dh^T R_poe and norm of the translation difference."""
    angles = euler_zyx(H_dh[:3, :3].T @ H_poe[:3, :3])
    e_R = math.sqrt(angles.rz ** 2 + angles.ry ** 2 + angles.rx ** 2)
    e_t = float(np.linalg.norm(H_dh[:3, 3] - H_poe[:3, 3]))
    return e_R, e_t


def validate(poe, dh, cfg, eps=CLASSIFY_EPS):
    """
    Compare both models over cfg.samples random configurations.
    Returns (records frame with RECORD_COLUMNS, summary {column: {'max', 'mean'}}).
    """
    poe = to_base(poe)
    if poe.n != dh.n:
        raise ArityMismatch(f'POE model has {poe.n} joints, D-H model has {dh.n}')
    low, high = cfg.joint_range
    configurations = ConfigurationSampler(poe.n, cfg.samples, low, high, cfg.seed).sample()

    def evaluate(index):
        q = configurations[index]
        e_R, e_t = pose_errors(dh_fk(dh, q), poe_fk(poe, q, eps))
        return ErrorRecord(index, e_R, e_t)

    indices = range(cfg.samples)
    with ThreadPoolExecutor(max_workers=cfg.num_workers) as pool:
        # map keeps the submission order whatever the completion order
        iterator = pool.map(evaluate, indices)
        if cfg.progress:
            iterator = tqdm(iterator, total=cfg.samples, desc='Validation')
        records = list(iterator)

    frame = pd.DataFrame.from_records(records, columns=RECORD_COLUMNS)
    summary = error_summary(frame)
    logger.info(f"{cfg.samples} samples: e_R max {summary['e_R_rad']['max']:.3e} rad "
                f"mean {summary['e_R_rad']['mean']:.3e} rad, e_t max {summary['e_t_mm']['max']:.3e} mm "
                f"mean {summary['e_t_mm']['mean']:.3e} mm")
    return frame, summary


def within_tolerance(summary, tolerance):
    if tolerance is None:
        return True
    return summary['e_R_rad']['max'] <= tolerance and summary['e_t_mm']['max'] <= tolerance


def summary_frame(summary):
    return pd.DataFrame(summary).T.rename_axis('metric').reset_index()
