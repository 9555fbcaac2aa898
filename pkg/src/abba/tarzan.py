"""Substring-frequency anomaly scoring of symbolic strings.

A test string is scored window by window against a reference string: the
observed count of each length-l window substring is compared with its
expected count under the reference, and the discrepancy is normalized by the
larger of the two (so scores live in [-1, 1] and a substring over an unseen
symbol cannot dominate merely by having expectation zero). Window scores are
mapped back to the time axis through the per-symbol segment lengths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class FrequencyIndex:
    """Occurrence counts of every substring of ``source``, queryable in
    O(|w|) after linear-time construction (suffix automaton)."""

    def __init__(self, source: str):
        self.source = source
        # state arrays: transition dict, suffix link, longest length, count
        self._next: list[dict[str, int]] = [{}]
        self._link = [-1]
        self._len = [0]
        occ = [0]
        last = 0
        for ch in source:
            curr = len(self._next)
            self._next.append({})
            self._link.append(0)
            self._len.append(self._len[last] + 1)
            occ.append(1)
            p = last
            while p >= 0 and ch not in self._next[p]:
                self._next[p][ch] = curr
                p = self._link[p]
            if p >= 0:
                q = self._next[p][ch]
                if self._len[p] + 1 == self._len[q]:
                    self._link[curr] = q
                else:
                    clone = len(self._next)
                    self._next.append(dict(self._next[q]))
                    self._link.append(self._link[q])
                    self._len.append(self._len[p] + 1)
                    occ.append(0)
                    while p >= 0 and self._next[p].get(ch) == q:
                        self._next[p][ch] = clone
                        p = self._link[p]
                    self._link[q] = clone
                    self._link[curr] = clone
            last = curr
        # propagate occurrence counts up the suffix-link tree
        order = sorted(range(1, len(self._next)), key=lambda s: self._len[s], reverse=True)
        for state in order:
            parent = self._link[state]
            if parent > 0:
                occ[parent] += occ[state]
        self._occ = occ

    def count(self, w: str) -> int:
        """Number of occurrences of ``w`` in the source string."""
        if not w:
            raise ValueError("substring must be nonempty")
        state = 0
        for ch in w:
            nxt = self._next[state].get(ch)
            if nxt is None:
                return 0
            state = nxt
        return self._occ[state]

    def n_windows(self, l: int) -> int:
        """Number of length-l windows in the source string."""
        return max(0, len(self.source) - l + 1)


def expected_frequency(ref_index: FrequencyIndex, w: str, test_windows: int) -> float:
    """Expected count of ``w`` among ``test_windows`` windows of the test
    string, estimated from the reference string.

    If ``w`` occurs in the reference, its frequency is rescaled by the window
    ratio. Otherwise the probability is interpolated from the two
    (l-1)-grams of ``w`` divided by their shared (l-2)-gram overlap (a
    Markov-chain estimate); if any required shorter gram is also absent the
    expectation is 0.
    """
    l = len(w)
    if l == 0:
        raise ValueError("substring must be nonempty")
    ref_windows = ref_index.n_windows(l)
    if ref_windows > 0:
        cnt = ref_index.count(w)
        if cnt > 0:
            return cnt * test_windows / ref_windows
    if l == 1:
        return 0.0
    prefix, suffix = w[:-1], w[1:]
    f_pre = ref_index.count(prefix)
    f_suf = ref_index.count(suffix)
    if f_pre == 0 or f_suf == 0:
        return 0.0
    windows_lm1 = ref_index.n_windows(l - 1)
    prob = (f_pre / windows_lm1) * (f_suf / windows_lm1)
    overlap = w[1:-1]
    if overlap:
        f_mid = ref_index.count(overlap)
        if f_mid == 0:
            return 0.0
        prob /= f_mid / ref_index.n_windows(l - 2)
    return test_windows * prob


def adapted_score(actual: float, expected: float) -> float:
    """Count discrepancy normalized into [-1, 1]: positive means the substring
    is over-represented in the test string. The extra 1 in the denominator
    makes the absent-everywhere case score 0 instead of 0/0."""
    if actual < 0 or expected < 0:
        raise ValueError("frequencies must be nonnegative")
    return (actual - expected) / max(actual, expected, 1.0)


@dataclass(frozen=True)
class AnomalyScoreSeries:
    """Window scores expanded onto the test series' time axis.

    Window j's score covers the samples of its first symbol; the trailing
    l-1 symbols, where no window starts, score 0."""

    scores: np.ndarray  # one entry per time sample
    window_scores: np.ndarray  # one entry per length-l window of the test string
    window_length: int

    def exceedances(self, threshold: float) -> list[tuple[int, int]]:
        """Half-open [start, end) sample intervals where |score| > threshold."""
        mask = np.abs(self.scores) > threshold
        intervals = []
        start = None
        for i, flag in enumerate(mask):
            if flag and start is None:
                start = i
            elif not flag and start is not None:
                intervals.append((start, i))
                start = None
        if start is not None:
            intervals.append((start, len(mask)))
        return intervals


def tarzan_scores(ref_symbols: str, test_symbols: str, l: int, segment_lengths) -> AnomalyScoreSeries:
    """Adapted anomaly score per length-l window of the test string, mapped
    onto the time axis.

    ``segment_lengths`` gives the number of time samples each test symbol
    covers (variable per symbol for adaptive representations, constant for
    fixed-window ones).
    """
    n_sym = len(test_symbols)
    if not 1 <= l <= n_sym:
        raise ValueError(f"window length {l} must be within 1..{n_sym}")
    seg_lens = np.asarray(segment_lengths, dtype=int)
    if seg_lens.size != n_sym:
        raise ValueError(
            f"{seg_lens.size} segment lengths for {n_sym} symbols"
        )
    ref_index = FrequencyIndex(ref_symbols)
    test_index = FrequencyIndex(test_symbols)
    test_windows = test_index.n_windows(l)

    window_scores = np.empty(test_windows)
    for j in range(test_windows):
        w = test_symbols[j : j + l]
        actual = test_index.count(w)
        expected = expected_frequency(ref_index, w, test_windows)
        window_scores[j] = adapted_score(actual, expected)

    per_symbol = np.zeros(n_sym)
    per_symbol[:test_windows] = window_scores
    scores = np.repeat(per_symbol, seg_lens)
    return AnomalyScoreSeries(scores=scores, window_scores=window_scores, window_length=l)
