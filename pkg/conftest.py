# keeps the repository root importable (model, datasets, utils, parser) from tests/
