"""Exception hierarchy shared by every stage of the codec."""


class CodecError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(CodecError, ValueError):
    """Shapes, sizes or parameters do not satisfy an operation's preconditions."""


class UnsupportedSizeError(InvalidArgumentError):
    pass


class CoverageError(CodecError):
    """A coefficient magnitude does not fit the installed Huffman tables.

    Usually means the quantization steps are too small for the sample range.
    Raising ``q3_scale``, lowering ``q`` or rescaling 12-bit input to 8 bits
    avoids it.
    """

    def __init__(self, message, block=None):
        if block is not None:
            message = f"{message} (block {block})"
        super().__init__(message)
        self.block = block


class CorruptStreamError(CodecError):
    def __init__(self, message, block=None):
        if block is not None:
            message = f"{message} (block {block})"
        super().__init__(message)
        self.block = block


class TruncatedStreamError(CorruptStreamError):
    pass


class UnsupportedFormatError(CodecError):
    """Input media is not in a format (or variant) this package reads."""


class TruncatedInputError(UnsupportedFormatError):
    pass


class DataRangeError(CodecError, ValueError):
    """A sample value exceeds the declared bit depth."""
