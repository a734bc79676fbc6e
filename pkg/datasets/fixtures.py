'''
Embedded PUMA 560 POE models (base convention, twists as (omega, v), mm). The actual model is a calibrated,
unnormalized parameter set.
'''
from model.kinematics import Convention, JointSpec, PoeModel

PUMA560 = {'nominal': {'joints': ((0, 0, 1, 0, 0, 0),
                                  (0, -1, 0, 0, 0, 0),
                                  (0, -1, 0, 0, 0, -100),
                                  (0, 0, -1, -50, 250, 0),
                                  (0, -1, 0, -20, 0, -250),
                                  (0, 0, -1, -50, 250, 0)),
                       'tool': (0, 0, 0, 250, 50, -20)},
           'actual': {'joints': ((0.04, -0.02, 0.999, 0.02, 0.04, 0),
                                 (0, -1.00002, 0, -0.02, 0, 0.05),
                                 (0.178, -0.984, -0.001, -0.07, 0.009, -101),
                                 (0.062, 0.013, -0.998, -51, 249, 0.0752),
                                 (0.001, -1.00004, 0, -20.6, -0.0206, -249),
                                 (0.095, 0.031, -0.995, -51, 249, 0)),
                      'tool': (0.02, -0.01, 0.01, 249, 51, -20.6)},
           }


def _puma560(variant):
    table = PUMA560[variant]
    return PoeModel(Convention.BASE, tuple(JointSpec(xi) for xi in table['joints']), tool_twist=table['tool'])


FIXTURES = {'puma560_nominal': lambda: _puma560('nominal'),
            'puma560_actual': lambda: _puma560('actual'),
            }


def get_fixture(name):
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture '{name}', available: {', '.join(FIXTURES)}")
    return FIXTURES[name]()
