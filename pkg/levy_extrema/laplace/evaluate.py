from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional

import numpy as np


def evaluate_on_grid(transform: Callable, q_values: Iterable[complex], max_workers: Optional[int] = None) -> np.ndarray:
    """
    Evaluates the transform at every q, concurrently when max_workers is not 1.

    The results keep the order of q_values, so the reduction done by the caller does not depend on scheduling.

    Args:
        transform: q -> value (scalar or array).
        q_values: points of evaluation.
        max_workers: number of threads; None lets the executor decide.

    Returns:
        Array with the q index along the first axis.
    """

    q_values = list(q_values)
    if max_workers == 1 or len(q_values) <= 1:
        results = [transform(q) for q in q_values]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            results = list(executor.map(transform, q_values))

    values = np.asarray(results)
    if not np.all(np.isfinite(values)):
        bad = int(np.argmax(~np.isfinite(values.reshape(len(q_values), -1)).any(axis=1)))
        raise FloatingPointError(f'Non-finite transform value at q={q_values[bad]}.')

    return values
