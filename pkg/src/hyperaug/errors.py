"""Exception types raised by the hyperaug library."""


class HyperaugError(Exception):
    """Base class for all errors raised by this library."""


class InvalidArgumentError(HyperaugError, ValueError):
    """An argument is outside its documented domain."""


class ShapeMismatchError(HyperaugError, ValueError):
    """Arrays that must share a shape do not."""


class EmptyDatasetError(HyperaugError):
    """A dataset root contains no class directories."""


class EmptyClassError(HyperaugError):
    """A class directory contains no sample files."""

    def __init__(self, class_name: str):
        super().__init__(f"class directory {class_name!r} contains no sample files")
        self.class_name = class_name


class HsbFormatError(HyperaugError, ValueError):
    """A file is not a well-formed HSB container."""


class NotAShapefileError(HyperaugError, ValueError):
    """The bytes do not start with a valid shapefile header."""


class UnsupportedGeometryError(HyperaugError, ValueError):
    """The shapefile holds a geometry type other than Point/PointZ."""

    def __init__(self, shape_type: int):
        super().__init__(f"unsupported shapefile geometry type {shape_type} "
                         "(only 1=Point and 11=PointZ are accepted)")
        self.shape_type = shape_type


class TruncatedShapefileError(HyperaugError, ValueError):
    """The shapefile buffer ends before a complete header or record."""

    def __init__(self, offset: int, detail: str):
        super().__init__(f"truncated shapefile at byte offset {offset}: {detail}")
        self.offset = offset
