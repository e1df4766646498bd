try:
    from ._oscsemi import *  # noqa: F401,F403
    from . import _oscsemi as _impl
except ImportError:  # build-tree layout: module sits next to the package
    from _oscsemi import *  # noqa: F401,F403
    import _oscsemi as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
