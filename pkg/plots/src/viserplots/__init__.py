from .render import CSV_HEADER, SchemaError, Series, build_figure, read_series, render

__version__ = "0.1.0"

__all__ = ["CSV_HEADER", "SchemaError", "Series", "build_figure",
           "read_series", "render", "__version__"]
