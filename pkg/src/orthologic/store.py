"""Memo stores for the memoized proof-search engines.

``AssocListStore`` looks keys up by a linear scan with a three-way
comparison.  ``OrderedStore`` is an ordered map (a two-level B-tree over
sorted blocks) needing O(log n) key comparisons per operation; keys only
need ``<``.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Any, Callable, List, Optional


class AssocListStore:
    """Association list; newest entries are scanned first."""

    def __init__(self, cmp: Callable[[Any, Any], int], scan: Optional[Callable] = None):
        self.cmp = cmp
        # optional fast ``scan(keys, key) -> index`` equivalent to _index
        self._scan = scan
        self._keys: List[Any] = []
        self._vals: List[Any] = []

    def __len__(self):
        return len(self._keys)

    def _index(self, key):
        if self._scan is not None:
            return self._scan(self._keys, key)
        cmp = self.cmp
        keys = self._keys
        for i in range(len(keys) - 1, -1, -1):
            if cmp(keys[i], key) == 0:
                return i
        return -1

    def get(self, key, default=None):
        i = self._index(key)
        return default if i < 0 else self._vals[i]

    def set(self, key, value):
        i = self._index(key)
        if i < 0:
            self._keys.append(key)
            self._vals.append(value)
        else:
            self._vals[i] = value

    def delete(self, key):
        i = self._index(key)
        if i >= 0:
            del self._keys[i]
            del self._vals[i]

    def items(self):
        return list(zip(self._keys, self._vals))


class OrderedStore:
    """Ordered map over keys supporting ``<``.

    Keys live in sorted blocks of at most ``2 * load`` entries; a sorted list
    of block maxima routes each search, so a lookup costs two binary
    searches.
    """

    def __init__(self, load: int = 256):
        self._load = load
        self._maxes: List[Any] = []
        self._keys: List[List[Any]] = []
        self._vals: List[List[Any]] = []
        self._len = 0

    def __len__(self):
        return self._len

    def _locate(self, key):
        maxes = self._maxes
        pos = bisect_left(maxes, key)
        if pos == len(maxes):
            return pos, -1, False
        keys = self._keys[pos]
        i = bisect_left(keys, key)
        # keys[i] >= key by construction
        return pos, i, not (key < keys[i])

    def get(self, key, default=None):
        if not self._maxes:
            return default
        pos, i, found = self._locate(key)
        return self._vals[pos][i] if found else default

    def set(self, key, value):
        if not self._maxes:
            self._maxes.append(key)
            self._keys.append([key])
            self._vals.append([value])
            self._len = 1
            return
        pos, i, found = self._locate(key)
        if found:
            self._vals[pos][i] = value
            return
        if pos == len(self._maxes):
            pos -= 1
            keys = self._keys[pos]
            keys.append(key)
            self._vals[pos].append(value)
            self._maxes[pos] = key
        else:
            self._keys[pos].insert(i, key)
            self._vals[pos].insert(i, value)
        self._len += 1
        if len(self._keys[pos]) > 2 * self._load:
            self._split(pos)

    def _split(self, pos):
        keys = self._keys[pos]
        vals = self._vals[pos]
        half = len(keys) // 2
        self._keys[pos:pos + 1] = [keys[:half], keys[half:]]
        self._vals[pos:pos + 1] = [vals[:half], vals[half:]]
        self._maxes[pos:pos + 1] = [keys[half - 1], keys[-1]]

    def delete(self, key):
        if not self._maxes:
            return
        pos, i, found = self._locate(key)
        if not found:
            return
        keys = self._keys[pos]
        del keys[i]
        del self._vals[pos][i]
        self._len -= 1
        if not keys:
            del self._keys[pos]
            del self._vals[pos]
            del self._maxes[pos]
        elif i == len(keys):
            self._maxes[pos] = keys[-1]

    def items(self):
        out = []
        for keys, vals in zip(self._keys, self._vals):
            out.extend(zip(keys, vals))
        return out
