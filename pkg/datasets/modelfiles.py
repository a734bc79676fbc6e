'''
YAML model files.

POE file:
    schema_version: 1
    kind: poe
    convention: base | tool | local
    qbar_scales_offset: true
    joints:
      - {twist: [w1, w2, w3, v1, v2, v3], offset: 0.0, declared: rotation | translation | helical}
    tool_twist: [6 values]            (base / tool)
    local_frames: [4x4, ...]           (local, n + 1 frames)

D-H file:
    schema_version: 1
    kind: dh
    base: {theta, d, alpha, a}
    rows: [{theta, d, alpha, a, j, k, qbar, offset_merged}, ...]
    tool: {theta, d}

Angles in rad, lengths in mm. Any path can be replaced by fixture:<name>.
'''
import math
from pathlib import Path

import numpy as np
import yaml

from datasets.fixtures import FIXTURES, get_fixture
from model.kinematics import Convention, DhModel, DhRow, JointSpec, PoeModel
from model.liegroup import Motion, is_rigid
from utils.errors import ParseError, SchemaVersionError, ScrewDhError

SCHEMA_VERSION = 1
FIXTURE_PREFIX = 'fixture:'


def _number(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f'expected a number, got {value!r}', field=field)
    if not math.isfinite(value):
        raise ParseError(f'expected a finite number, got {value!r}', field=field)
    return float(value)


def _vector(value, size, field):
    if not isinstance(value, (list, tuple)) or len(value) != size:
        found = len(value) if isinstance(value, (list, tuple)) else type(value).__name__
        raise ParseError(f'expected {size} values, got {found}', field=field)
    return np.array([_number(x, f'{field}[{i}]') for i, x in enumerate(value)])


def _mapping(value, field):
    if not isinstance(value, dict):
        raise ParseError(f'expected a mapping, got {type(value).__name__}', field=field)
    return value


def _required(doc, key, field):
    if key not in doc:
        raise ParseError('missing required field', field=field)
    return doc[key]


def _enum(enum_cls, value, field):
    try:
        return enum_cls(value)
    except ValueError:
        choices = ', '.join(e.value for e in enum_cls)
        raise ParseError(f'expected one of {choices}, got {value!r}', field=field)


def _poe_from_doc(doc):
    convention = _enum(Convention, _required(doc, 'convention', 'convention'), 'convention')
    joints = []
    for i, entry in enumerate(_required(doc, 'joints', 'joints') or []):
        field = f'joints[{i}]'
        entry = _mapping(entry, field)
        twist = _vector(_required(entry, 'twist', f'{field}.twist'), 6, f'{field}.twist')
        offset = _number(entry.get('offset', 0.0), f'{field}.offset')
        declared = entry.get('declared')
        if declared is not None:
            declared = _enum(Motion, declared, f'{field}.declared')
        try:
            joints.append(JointSpec(twist, offset, declared))
        except (ScrewDhError, AssertionError) as e:
            raise ParseError(str(e), field=f'{field}.twist')

    tool_twist, frames = None, None
    if convention is Convention.LOCAL:
        raw = _required(doc, 'local_frames', 'local_frames') or []
        frames = []
        for i, frame in enumerate(raw):
            if not isinstance(frame, list) or len(frame) != 4:
                raise ParseError('expected a 4x4 matrix', field=f'local_frames[{i}]')
            H = np.stack([_vector(r, 4, f'local_frames[{i}][{k}]') for k, r in enumerate(frame)])
            if not is_rigid(H):
                raise ParseError('expected a rigid transform', field=f'local_frames[{i}]')
            frames.append(H)
    else:
        tool_twist = _vector(_required(doc, 'tool_twist', 'tool_twist'), 6, 'tool_twist')
    qbar_scales_offset = doc.get('qbar_scales_offset', True)
    if not isinstance(qbar_scales_offset, bool):
        raise ParseError(f'expected true or false, got {qbar_scales_offset!r}', field='qbar_scales_offset')
    try:
        return PoeModel(convention, tuple(joints), tool_twist=tool_twist, local_frames=frames,
                        qbar_scales_offset=qbar_scales_offset)
    except (ScrewDhError, AssertionError) as e:
        raise ParseError(str(e), field='local_frames' if convention is Convention.LOCAL else 'tool_twist')


def _row_from_doc(doc, field, keys):
    doc = _mapping(doc, field)
    values = {key: _number(_required(doc, key, f'{field}.{key}'), f'{field}.{key}') for key in keys}
    for key in ('j', 'k', 'qbar'):
        if key in doc:
            values[key] = _number(doc[key], f'{field}.{key}')
    if 'j' in values:
        values['j'] = int(values['j'])
    if 'offset_merged' in doc:
        values['offset_merged'] = bool(doc['offset_merged'])
    try:
        return DhRow(**values)
    except (AssertionError, ValueError) as e:
        raise ParseError(str(e), field=field)


def _dh_from_doc(doc):
    base = _row_from_doc(_required(doc, 'base', 'base'), 'base', ('theta', 'd', 'alpha', 'a'))
    rows = []
    for i, entry in enumerate(_required(doc, 'rows', 'rows') or []):
        row = _row_from_doc(entry, f'rows[{i}]', ('theta', 'd', 'alpha', 'a'))
        if row.joint_type is None:
            raise ParseError('row does not describe a joint, set j and k', field=f'rows[{i}]')
        rows.append(row)
    tool = _row_from_doc(_required(doc, 'tool', 'tool'), 'tool', ('theta', 'd'))
    return DhModel(base, tuple(rows), tool)


def model_from_text(text):
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, 'problem_mark', None)
        raise ParseError(f'invalid yaml: {getattr(e, "problem", None) or e}',
                         line=mark.line + 1 if mark is not None else None)
    doc = _mapping(doc, '<document>')
    version = _required(doc, 'schema_version', 'schema_version')
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(f'unsupported schema version {version!r}, expected {SCHEMA_VERSION}',
                                 field='schema_version')
    kind = _required(doc, 'kind', 'kind')
    if kind == 'poe':
        return _poe_from_doc(doc)
    elif kind == 'dh':
        return _dh_from_doc(doc)
    raise ParseError(f"expected 'poe' or 'dh', got {kind!r}", field='kind')


def load_model(path):
    """PoeModel or DhModel from a YAML file, or a built-in model given as fixture:<name>."""
    path = str(path)
    if path.startswith(FIXTURE_PREFIX):
        name = path[len(FIXTURE_PREFIX):]
        if name not in FIXTURES:
            raise ParseError(f"unknown fixture '{name}', available: {', '.join(FIXTURES)}")
        return get_fixture(name)
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ParseError(f'cannot read model file {path}: {e.strerror}')
    return model_from_text(text)


def _floats(values):
    return [float(x) for x in values]


def _row_to_doc(row, keys):
    return {key: float(getattr(row, key)) for key in keys}


def model_to_doc(model):
    if isinstance(model, PoeModel):
        doc = {'schema_version': SCHEMA_VERSION, 'kind': 'poe', 'convention': model.convention.value,
               'qbar_scales_offset': model.qbar_scales_offset, 'joints': []}
        for joint in model.joints:
            entry = {'twist': _floats(joint.twist), 'offset': float(joint.offset)}
            if joint.declared is not None:
                entry['declared'] = joint.declared.value
            doc['joints'].append(entry)
        if model.convention is Convention.LOCAL:
            doc['local_frames'] = [[_floats(r) for r in H] for H in model.local_frames]
        else:
            doc['tool_twist'] = _floats(model.tool_twist)
        return doc
    elif isinstance(model, DhModel):
        rows = []
        for row in model.rows:
            entry = _row_to_doc(row, ('theta', 'd', 'alpha', 'a'))
            entry.update(j=int(row.j), k=float(row.k), qbar=float(row.qbar), offset_merged=bool(row.offset_merged))
            rows.append(entry)
        return {'schema_version': SCHEMA_VERSION, 'kind': 'dh',
                'base': _row_to_doc(model.base_row, ('theta', 'd', 'alpha', 'a')),
                'rows': rows,
                'tool': _row_to_doc(model.tool_row, ('theta', 'd'))}
    raise TypeError(f'expected a PoeModel or a DhModel, got {type(model).__name__}')


def save_model(model, path):
    path = Path(path)
    if path.parent != Path(''):
        path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w') as f:
        yaml.safe_dump(model_to_doc(model), f, sort_keys=False, default_flow_style=None)
    return path

