"""Collects one pass/fail line per acceptance criterion for the terminal summary."""
import functools
import time

RESULTS: dict[int, str] = {}


def criterion(number: int, name: str, limit: float | None = None):
    """Time a criterion test, enforce its runtime limit and log a one-line verdict."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t = time.perf_counter()
            status, note = "PASS", ""
            try:
                fn(*args, **kwargs)
                dt = time.perf_counter() - t
                if limit is not None and dt > limit:
                    status, note = "FAIL", f" over the {limit:.0f}s limit"
            except BaseException as e:
                dt = time.perf_counter() - t
                status, note = "FAIL", f" {type(e).__name__}: {str(e).splitlines()[0] if str(e) else ''}"
                raise
            finally:
                lim = f"/{limit:.0f}s" if limit else ""
                line = f"[{status}] criterion {number:2d} {name} ({dt:.2f}s{lim}){note}"
                RESULTS[number] = line
                print(line)
            assert status == "PASS", line
        return run
    return wrap
