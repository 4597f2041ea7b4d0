from .XiBounds import XiBounds

__all__ = ["XiBounds"]
