"""Image self-ception: rebuild an image as a mosaic of scaled copies of itself."""

try:
    from ._selfception import *  # noqa: F401,F403
except ImportError:
    # in-tree builds put the extension directly on sys.path
    from _selfception import *  # noqa: F401,F403
