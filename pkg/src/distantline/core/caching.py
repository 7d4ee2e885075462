"""Single-initialization caches for immutable objects."""

import threading
from typing import Any, Callable, Dict, TypeVar

T = TypeVar("T")


class OnceCache:
    """Mixin giving an object race-free lazily computed attributes.

    Every key is built at most once; concurrent readers either see the
    finished value or wait on the lock while it is built. The lock is
    reentrant so builders may depend on other cached keys.
    """

    def __init__(self) -> None:
        self._once_lock = threading.RLock()
        self._once: Dict[str, Any] = {}

    def _cached(self, key: str, builder: Callable[[], T]) -> T:
        try:
            return self._once[key]
        except KeyError:
            pass
        with self._once_lock:
            if key not in self._once:
                self._once[key] = builder()
            return self._once[key]

    def _is_cached(self, key: str) -> bool:
        return key in self._once
