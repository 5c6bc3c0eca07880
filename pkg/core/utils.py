"""
Numeric and serialization helpers
"""
import json
import math

import numpy as np

from config.settings import REPORT_FLOAT_DIGITS


def max_abs(values):
    """L-infinity norm of an array-like (0 for empty input)"""
    values = np.asarray(values)
    if values.size == 0:
        return 0.0
    return float(np.max(np.abs(values)))


def linf_error(a, b):
    return max_abs(np.asarray(a) - np.asarray(b))


def l2_error(a, b, spacing):
    """Discrete L2 distance h*sum|a-b|^2, square-rooted"""
    diff = np.asarray(a) - np.asarray(b)
    return float(np.sqrt(spacing * np.sum(np.abs(diff) ** 2)))


def relative_drift(series):
    """max |s_k - s_0| / |s_0| over a diagnostic series"""
    series = np.asarray(series, dtype=float)
    reference = abs(series[0])
    if reference == 0:
        return max_abs(series - series[0])
    return float(np.max(np.abs(series - series[0])) / reference)


def fit_order(steps, errors):
    """Least-squares slope of log(error) against log(step)"""
    slope, _ = np.polyfit(np.log(np.asarray(steps, dtype=float)),
                          np.log(np.asarray(errors, dtype=float)), 1)
    return float(slope)


def format_float(value):
    """17 significant digits, enough to round-trip any double"""
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"refusing to serialize non-finite value {value!r}")
    text = format(value, f'.{REPORT_FLOAT_DIGITS}g')
    if not any(ch in text for ch in '.en'):
        text += '.0'
    return text


def _encode(obj, indent, level):
    pad = ' ' * (indent * (level + 1))
    end = ' ' * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return '{}'
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return '{\n' + ',\n'.join(items) + '\n' + end + '}'
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return '[]'
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return '[\n' + ',\n'.join(items) + '\n' + end + ']'
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_report(obj, indent=2):
    """Deterministic JSON text; floats always carry 17 significant digits"""
    return _encode(obj, indent, 0) + '\n'


def write_report(path, obj):
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps_report(obj))
    return path
