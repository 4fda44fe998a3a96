from .search import SearchCursor, SearchSpec, is_admissible, next_place, stream

__all__ = ["SearchCursor", "SearchSpec", "is_admissible", "next_place", "stream"]
