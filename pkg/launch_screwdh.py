import logging
import sys
from dataclasses import replace

import numpy as np

import parser as parser
from datasets.fixtures import FIXTURES
from datasets.modelfiles import load_model, save_model
from model.conversion import dh_report, poe_to_dh
from model.identifiability import census, counts, parallel_axis_pairs, significant_changes
from model.kinematics import DhModel, PoeModel, dh_fk, poe_fk, to_base
from model.validation import ValidationConfig, summary_frame, validate, within_tolerance
from utils.errors import ConventionMismatch, ParseError, ScrewDhError
from utils.utils import parse_joint_values, setup_default_logging

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_TOLERANCE = 0, 1, 2, 3


def _load_poe(path, args):
    model = load_model(path)
    if not isinstance(model, PoeModel):
        raise ConventionMismatch(f'{path} holds a D-H model, a POE model is expected')
    if args.offset_unscaled:
        model = replace(model, qbar_scales_offset=False)
    return model


def _convert(args, logger):
    model = _load_poe(args.model, args)
    dh = poe_to_dh(model, args.eps)
    report = dh_report(dh)
    print(report.to_string(float_format=lambda x: f'{x:.6f}', na_rep=''))
    if args.out is not None:
        save_model(dh, args.out)
        logger.info(f'D-H model saved to {args.out}')
    if args.report_csv is not None:
        report.to_csv(args.report_csv)
        logger.info(f'D-H table saved to {args.report_csv}')
    return EXIT_OK


def _fk(args, logger):
    model = load_model(args.model)
    q = parse_joint_values(args.q)
    if isinstance(model, DhModel):
        H = dh_fk(model, q)
    else:
        if args.offset_unscaled:
            model = replace(model, qbar_scales_offset=False)
        H = poe_fk(to_base(model), q, args.eps)
    print(np.array2string(H, precision=9, suppress_small=True))
    return EXIT_OK


def _validate(args, logger):
    poe = _load_poe(args.model, args)
    if args.dh is not None:
        dh = load_model(args.dh)
        if not isinstance(dh, DhModel):
            raise ConventionMismatch(f'{args.dh} holds a POE model, a D-H model is expected')
    else:
        dh = poe_to_dh(poe, args.eps)
    cfg = ValidationConfig.from_args(args)
    records, summary = validate(poe, dh, cfg, args.eps)
    summary_df = summary_frame(summary)
    print(summary_df.to_string(index=False))
    if args.csv is not None:
        records.to_csv(args.csv, index=False)
        logger.info(f'{len(records)} error records saved to {args.csv}')
    if args.summary_csv is not None:
        summary_df.to_csv(args.summary_csv, index=False)
    if not within_tolerance(summary, cfg.tolerance):
        logger.error(f'errors exceed the tolerance {cfg.tolerance:g}')
        return EXIT_TOLERANCE
    return EXIT_OK


def _identify(args, logger):
    model = load_model(args.model)
    report = counts(census(model, args.eps))
    print(report.to_text())
    pairs = parallel_axis_pairs(model, args.eps)
    print(f"parallel adjacent axes: {', '.join(f'{a}-{b}' for a, b in pairs) or 'none'}")
    return EXIT_OK


def _fixtures(args, logger):
    for name in FIXTURES:
        print(f'fixture:{name}')
    return EXIT_OK


def _compare(args, logger):
    nominal, actual = _load_poe(args.nominal, args), _load_poe(args.actual, args)
    for label, model in (('nominal', nominal), ('actual', actual)):
        pairs = parallel_axis_pairs(model, args.eps)
        print(f"{label} parallel adjacent axes: {', '.join(f'{a}-{b}' for a, b in pairs) or 'none'}")
    changes = significant_changes(poe_to_dh(nominal, args.eps), poe_to_dh(actual, args.eps),
                                  args.angle_deg, args.length_mm)
    print(f'{len(changes)} D-H parameters changed by more than {args.angle_deg:g} deg / {args.length_mm:g} mm')
    for row, name, before, after in changes:
        print(f'  {row} {name}: {before:.4f} -> {after:.4f}')
    return EXIT_OK


COMMANDS = {'convert': _convert,
            'fk': _fk,
            'validate': _validate,
            'identify': _identify,
            'fixtures': _fixtures,
            'compare': _compare,
            }


def main(argv=None):
    args = parser.parse_args(argv)
    level = logging.DEBUG if getattr(args, 'verbose', False) else logging.INFO
    logger, _ = setup_default_logging(getattr(args, 'log_dir', None), default_level=level)
    logger.info(dict(args._get_kwargs()))
    try:
        return COMMANDS[args.command](args, logger)
    except ParseError as e:
        logger.error(f'invalid input: {e}')
        return EXIT_PARSE
    except ScrewDhError as e:
        logger.error(f'{e.__class__.__name__}: {e}')
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
