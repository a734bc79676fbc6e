'''
Exception hierarchy shared by the math core, the model files and the launcher.
'''


class ScrewDhError(Exception):
    """Base class of every error raised by screwdh."""


class ZeroTwist(ScrewDhError):
    pass


class NonUnitDirection(ScrewDhError):
    pass


class ConventionMismatch(ScrewDhError):
    pass


class ArityMismatch(ScrewDhError):
    pass


class FrameCountMismatch(ScrewDhError):
    pass


class NotRotational(ScrewDhError):
    pass


class NotTranslational(ScrewDhError):
    pass


class NotHelical(ScrewDhError):
    """A joint declared helical whose twist has exactly zero pitch."""


class ParseError(ScrewDhError):
    """
    Raised when a model file cannot be read.

    line: 1-based line in the source file when known (yaml syntax errors), else None
    field: dotted path of the offending field (ex: joints[2].twist), else None
    """

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f'line {line}')
        if field is not None:
            where.append(f'field {field}')
        prefix = f"[{', '.join(where)}] " if where else ''
        super().__init__(prefix + message)


class SchemaVersionError(ParseError):
    pass
