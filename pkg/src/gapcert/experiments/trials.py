import json
import logging
import time
from pathlib import Path

import numpy as np

logger = logging.getLogger(__name__)

TRIAL_LOG = "trials.jsonl"
CONFIG_ECHO = "config.json"

# fields that change how a run executes but not what it computes
_EXECUTION_FIELDS = {"workers", "out"}


def plain(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serialisable")


def timed(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - start


class RunContext:
    """Per-run trial bookkeeping.

    Completed trials are appended to ``trials.jsonl`` in trial-index order as
    they finish. Reopening an output directory written with the same config
    reuses every completed trial; a different config starts the log afresh.
    """

    def __init__(self, config, out_dir, executor=None):
        self.config = config
        self.out_dir = Path(out_dir)
        self.executor = executor
        self.timings = []
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self._done = self._load()
        self._log = (self.out_dir / TRIAL_LOG).open("a", encoding="utf-8")

    def _fingerprint(self):
        return json.dumps(self.config.model_dump(mode="json", exclude=_EXECUTION_FIELDS), sort_keys=True)

    def _load(self):
        echo = self.out_dir / CONFIG_ECHO
        log = self.out_dir / TRIAL_LOG
        fingerprint = self._fingerprint()
        if echo.exists() and log.exists() and echo.read_text(encoding="utf-8").strip() == fingerprint:
            done = {}
            for line in log.read_text(encoding="utf-8").splitlines():
                try:
                    entry = json.loads(line)
                except json.JSONDecodeError:
                    # torn final line of an interrupted run
                    continue
                done[(entry["stage"], entry["trial"])] = entry
            log.write_text("".join(json.dumps(entry, sort_keys=True) + "\n" for entry in done.values()), encoding="utf-8")
            logger.info("resuming %s with %d completed trials", self.out_dir, len(done))
            return done
        echo.write_text(fingerprint + "\n", encoding="utf-8")
        log.write_text("", encoding="utf-8")
        return {}

    def map_trials(self, stage, fn, count):
        """Records of trials ``0..count-1`` of ``stage``, in index order.

        ``fn(index)`` returns ``(record, seconds)``; only missing trials run.
        """
        pending = [index for index in range(count) if (stage, index) not in self._done]
        if len(pending) < count:
            logger.info("%s: reusing %d of %d trials", stage, count - len(pending), count)
        results = self.executor.map(fn, pending) if self.executor is not None else map(fn, pending)
        for index, (record, seconds) in zip(pending, results):
            entry = json.loads(json.dumps({"stage": stage, "trial": index, **record}, default=plain))
            self._log.write(json.dumps(entry, sort_keys=True) + "\n")
            self._log.flush()
            self._done[(stage, index)] = entry
            self.timings.append((stage, index, seconds))
            logger.debug("%s: trial %d done in %.3fs", stage, index, seconds)
        return [self._done[(stage, index)] for index in range(count)]

    def close(self):
        self._log.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False
