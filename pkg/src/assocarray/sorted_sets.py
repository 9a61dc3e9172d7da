"""Sorted union and intersection of repetition-free key sequences.

Keys are strings or finite numbers. Every number sorts before every
string; numbers compare numerically and strings by code point.

Key sequences are held as numpy arrays: ``<U`` for all-string keys,
``float64`` for all-number keys, and ``object`` when the two kinds mix.
"""

from __future__ import annotations

import math
from itertools import repeat
from numbers import Real
from typing import NamedTuple, Sequence

import numpy as np

__all__ = [
    "MergeResult",
    "as_keys",
    "key_order",
    "sorted_union",
    "sorted_intersection",
    "sorted_unique",
]


class MergeResult(NamedTuple):
    merged: np.ndarray
    map_left: np.ndarray
    map_right: np.ndarray


def _is_number(x) -> bool:
    if type(x) is float or type(x) is int:
        return True
    return isinstance(x, (Real, np.number)) and not isinstance(x, (bool, np.bool_))


def key_order(k):
    """Sort key implementing the global key order."""
    if isinstance(k, str):
        return (1, k)
    if _is_number(k):
        f = float(k)
        if math.isnan(f):
            raise ValueError("NaN is not a valid key")
        return (0, f)
    raise TypeError(f"keys must be strings or numbers, got {type(k).__name__}")


def _check_number_types(values: list) -> None:
    for t in set(map(type, values)):
        if not (issubclass(t, (Real, np.number)) and not issubclass(t, (bool, np.bool_))):
            raise TypeError(f"keys must be strings or numbers, got {t.__name__}")


def _str_mask(items: list) -> np.ndarray:
    return np.fromiter(map(isinstance, items, repeat(str)), dtype=bool, count=len(items))


def as_keys(items) -> np.ndarray:
    """Normalize a key sequence to a numpy array (no sorting)."""
    if isinstance(items, np.ndarray):
        if items.dtype.kind == "U":
            return items
        if items.dtype.kind in "iuf":
            out = items.astype(np.float64, copy=False)
            if np.isnan(out).any():
                raise ValueError("NaN is not a valid key")
            return out
        items = items.tolist()
    items = list(items)
    if not items:
        return np.empty(0, dtype=np.float64)
    is_str = _str_mask(items)
    if is_str.all():
        return np.array(items, dtype=str)
    boxed = np.empty(len(items), dtype=object)
    boxed[:] = items
    nums = boxed[~is_str]
    _check_number_types(nums.tolist())
    as_float = nums.astype(np.float64)
    if np.isnan(as_float).any():
        raise ValueError("NaN is not a valid key")
    if not is_str.any():
        return as_float
    boxed[~is_str] = as_float.tolist()
    boxed[is_str] = boxed[is_str].astype(str).tolist()
    return boxed


def _from_parts(nums: np.ndarray, strs: np.ndarray) -> np.ndarray:
    if len(strs) == 0:
        return nums.astype(np.float64, copy=False)
    if len(nums) == 0:
        return strs
    out = np.empty(len(nums) + len(strs), dtype=object)
    out[: len(nums)] = nums.tolist()
    out[len(nums):] = strs.tolist()
    return out


def _split(items, name: str) -> tuple[np.ndarray, np.ndarray]:
    """Cut a sorted key sequence into its number run and its string run."""
    if isinstance(items, np.ndarray) and items.dtype.kind != "O":
        arr = as_keys(items)
        if arr.dtype.kind == "U":
            nums, strs = np.empty(0, dtype=np.float64), arr
        else:
            nums, strs = arr, np.empty(0, dtype=str)
    else:
        items = items.tolist() if isinstance(items, np.ndarray) else list(items)
        is_str = _str_mask(items)
        k = len(items) - int(is_str.sum())
        if is_str[:k].any():
            raise ValueError(f"{name} keys must be sorted and repetition-free")
        head = items[:k]
        _check_number_types(head)
        nums = np.array(head, dtype=np.float64)
        if np.isnan(nums).any():
            raise ValueError("NaN is not a valid key")
        strs = np.array(items[k:], dtype=str)
    if __debug__:
        for run in (nums, strs):
            if not np.all(run[:-1] < run[1:]):
                raise ValueError(f"{name} keys must be sorted and repetition-free")
    return nums, strs


def _locate(left: np.ndarray, right: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Insertion points of ``right`` in ``left`` and which of them are hits."""
    pos = np.searchsorted(left, right)
    found = np.zeros(len(right), dtype=bool)
    inside = pos < len(left)
    found[inside] = left[pos[inside]] == right[inside]
    return pos, found


def _union_run(left: np.ndarray, right: np.ndarray):
    pos, found = _locate(left, right)
    new = ~found
    # right[j] follows pos[j] left keys and every new right key before it
    map_r = pos + (np.cumsum(new) - new)
    # left[i] is pushed back by each new right key that sorts below it
    idx = np.arange(len(left))
    map_l = idx + np.searchsorted(pos[new], idx, side="right")
    merged = np.empty(len(left) + int(new.sum()), dtype=np.result_type(left.dtype, right.dtype))
    merged[map_l] = left
    merged[map_r] = right
    return merged, map_l, map_r


def _intersection_run(left: np.ndarray, right: np.ndarray):
    pos, found = _locate(left, right)
    map_l = pos[found]
    return left[map_l], map_l, np.flatnonzero(found)


def sorted_union(left: Sequence, right: Sequence) -> MergeResult:
    """Union of two sorted repetition-free key sequences.

    ``map_left[m]`` is the output position of ``left[m]``; likewise for
    ``map_right``. Numbers and strings are merged as separate runs, each
    with vectorized binary searches, so no per-key Python work is done.
    """
    ln, ls = _split(left, "left")
    rn, rs = _split(right, "right")
    mn, ln_map, rn_map = _union_run(ln, rn)
    ms, ls_map, rs_map = _union_run(ls, rs)
    off = len(mn)
    return MergeResult(
        _from_parts(mn, ms),
        np.concatenate([ln_map, ls_map + off]).astype(np.intp, copy=False),
        np.concatenate([rn_map, rs_map + off]).astype(np.intp, copy=False),
    )


def sorted_intersection(left: Sequence, right: Sequence) -> MergeResult:
    """Common keys of two sorted repetition-free sequences.

    ``map_left[t]`` is the position of ``merged[t]`` within ``left``;
    likewise for ``map_right``.
    """
    ln, ls = _split(left, "left")
    rn, rs = _split(right, "right")
    mn, ln_map, rn_map = _intersection_run(ln, rn)
    ms, ls_map, rs_map = _intersection_run(ls, rs)
    return MergeResult(
        _from_parts(mn, ms),
        np.concatenate([ln_map, ls_map + len(ln)]).astype(np.intp, copy=False),
        np.concatenate([rn_map, rs_map + len(rn)]).astype(np.intp, copy=False),
    )


def sorted_unique(items) -> tuple[np.ndarray, np.ndarray]:
    """Sorted deduplication plus, per input item, its output position."""
    keys = as_keys(items)
    if keys.dtype.kind != "O":
        uniq, pos = np.unique(keys, return_inverse=True)
        return uniq, pos.astype(np.intp).reshape(-1)
    raw = keys.tolist()
    order = [key_order(x) for x in raw]
    distinct = sorted(set(order))
    where = {k: i for i, k in enumerate(distinct)}
    pos = np.array([where[k] for k in order], dtype=np.intp)
    first = {}
    for x, k in zip(raw, order):
        first.setdefault(k, x)
    out = np.empty(len(distinct), dtype=object)
    out[:] = [first[k] for k in distinct]
    return out, pos
