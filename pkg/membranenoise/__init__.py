# -*- coding: utf-8 -*-
try:
    from . import _version

    __version__ = _version.get_versions()["version"]
except ImportError:
    # _version.py is generated by versioneer at build time
    __version__ = "0+unknown"
