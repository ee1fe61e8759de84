import json
from dataclasses import dataclass

import numpy as np


@dataclass
class OracleResult:
    value: float
    minimizer: np.ndarray | None
    method: str
    evaluations: int
    converged: bool = True

    def to_dict(self):
        minimizer = None if self.minimizer is None else np.asarray(self.minimizer).tolist()
        return {"value": self.value, "minimizer": minimizer, "method": self.method, "evaluations": self.evaluations}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)
