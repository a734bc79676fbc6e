'''
Writes the embedded fixtures as YAML model files, together with their D-H conversions.
Run from the repository root: python -m utils.generate_fixture_files --output-path models
'''
import argparse
import os

from datasets.fixtures import FIXTURES, get_fixture
from datasets.modelfiles import save_model
from model.conversion import poe_to_dh


def generate_fixture_files(output_path, names=None, with_dh=True, eps=1e-8):
    written = []
    for name in names or FIXTURES:
        model = get_fixture(name)
        written.append(save_model(model, os.path.join(output_path, f'{name}.yaml')))
        if with_dh:
            written.append(save_model(poe_to_dh(model, eps), os.path.join(output_path, f'{name}_dh.yaml')))
    for path in written:
        print(f'Generated model file: {path}')
    return written


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description=' Fixture model file generation')
    parser.add_argument('--output-path', type=str, default='models',
                        help='output path where the model files will be written')
    parser.add_argument('--names', type=str, nargs='*', default=None,
                        help='fixtures to write (ex: puma560_actual), all of them if not set')
    parser.add_argument('--no-dh', action='store_true',
                        help='If set, the D-H conversions are not written')
    parser.add_argument('--eps', type=float, default=float(os.environ.get('SCREWDH_EPS', 1e-8)),
                        help='motion classification threshold used by the conversion')
    args, _ = parser.parse_known_args()

    generate_fixture_files(args.output_path, args.names, with_dh=not args.no_dh, eps=args.eps)
