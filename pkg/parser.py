import argparse
import math
import os


def _common_parser():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--eps', type=float, default=float(os.environ.get('SCREWDH_EPS', 1e-8)),
                        help='threshold below which a twist part or a pitch counts as zero (motion classification)')
    parser.add_argument('--offset-unscaled', action='store_true',
                        help='If set, the normalization factor multiplies the joint variable only and not its offset')
    parser.add_argument('--log-dir', type=str, default=os.environ.get('SCREWDH_LOG_DIR', None),
                        help='directory of the time-stamped log file, no log file if not set')
    parser.add_argument('--verbose', action='store_true',
                        help='If set, the per-joint conversion trace is logged (DEBUG level)')
    return parser


def build_parser():
    common = _common_parser()
    parser = argparse.ArgumentParser(description='POE <-> D-H robot kinematics toolkit')
    subparsers = parser.add_subparsers(dest='command', required=True)

    convert = subparsers.add_parser('convert', parents=[common],
                                    help='convert a POE model (base, tool or local) into D-H parameters')
    convert.add_argument('model', type=str, help='POE model file or fixture:<name>')
    convert.add_argument('--out', type=str, default=None,
                         help='path where the D-H model is saved (yaml)')
    convert.add_argument('--report-csv', type=str, default=None,
                         help='path where the D-H table (deg, mm, mm/deg) is saved as csv')

    fk = subparsers.add_parser('fk', parents=[common], help='forward kinematics of a POE or D-H model')
    fk.add_argument('model', type=str, help='model file or fixture:<name>')
    fk.add_argument('--q', type=str, default='',
                    help='comma separated joint values (rad for revolute / helical joints, mm for prismatic)')

    validate = subparsers.add_parser('validate', parents=[common],
                                     help='compare the POE and D-H forward kinematics on random configurations')
    validate.add_argument('model', type=str, help='POE model file or fixture:<name>')
    validate.add_argument('--dh', type=str, default=None,
                          help='D-H model file, if not set the POE model is converted first')
    validate.add_argument('--samples', type=int, default=100,
                          help='number of random configurations')
    validate.add_argument('--seed', type=int, default=int(os.environ.get('SCREWDH_SEED', 123)),
                          help='seed of the configuration generator')
    validate.add_argument('--joint-low', type=float, default=-math.pi,
                          help='lower bound of the joint values')
    validate.add_argument('--joint-high', type=float, default=math.pi,
                          help='upper bound of the joint values')
    validate.add_argument('--tolerance', type=float, default=None,
                          help='If set, exit with code 3 when the max rotation or translation error exceeds it')
    validate.add_argument('--csv', type=str, default=None,
                          help='path of the per-sample error csv (index, e_R_rad, e_t_mm)')
    validate.add_argument('--summary-csv', type=str, default=None,
                          help='path of the max / mean summary csv')
    validate.add_argument('--num-workers', type=int, default=1,
                          help='number of threads evaluating the samples')
    validate.add_argument('--no-progress-bar', action='store_true',
                          help='If set, progress bar will not be displayed during validation')

    identify = subparsers.add_parser('identify', parents=[common],
                                     help='joint census and number of identifiable parameters')
    identify.add_argument('model', type=str, help='POE or D-H model file or fixture:<name>')

    subparsers.add_parser('fixtures', help='list the embedded models usable as fixture:<name>')

    compare = subparsers.add_parser('compare', parents=[common],
                                    help='convert two POE models and report parallel axes and D-H parameters that moved')
    compare.add_argument('nominal', type=str, help='nominal POE model file or fixture:<name>')
    compare.add_argument('actual', type=str, help='actual POE model file or fixture:<name>')
    compare.add_argument('--angle-deg', type=float, default=60.,
                         help='angle change (deg) above which a D-H parameter is reported')
    compare.add_argument('--length-mm', type=float, default=30.,
                         help='length change (mm) above which a D-H parameter is reported')
    return parser


def parse_args(argv=None):
    return build_parser().parse_args(argv)
