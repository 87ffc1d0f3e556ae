from ._bvk import *  # noqa: F401,F403
