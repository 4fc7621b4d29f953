from ._conemink import *  # noqa: F401,F403
