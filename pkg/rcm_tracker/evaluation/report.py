# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""
Session reports: metrics grouped into subcategories, left/right comparison, validation errors
and the configuration they were computed with.
"""

import json
import warnings
from dataclasses import dataclass, field
from typing import Optional

import pandas
from pyiron_base import DataContainer, state

from rcm_tracker.metrics.metrics import METRIC_FIELDS, METRIC_UNITS, MetricSet
from rcm_tracker.utils.errors import InvalidInputError, ParseError
from rcm_tracker.utils.formatting import rounded

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"

HANDS = ("left", "right")

SUBCATEGORIES = {
    "execution_rapidity": ("time_total", "idle_pct"),
    "gesture_control": ("avg_accel", "fluidity", "jerk", "avg_speed"),
    "navigation_3d": ("path_length", "depth_workspace", "volume"),
}

SCHEMA_NOTE = (
    "avg_speed is grouped under gesture_control together with acceleration and fluidity; "
    "jerk is listed next to fluidity as its reciprocal base value"
)

DURATION_TOLERANCE = 0.01

# smaller is better for these, per hand comparison
_ECONOMY_METRICS = ("path_length", "volume")


@dataclass(frozen=True)
class SubcategoryView:
    """The nine metrics of one hand partitioned into three subcategories."""

    execution_rapidity: dict
    gesture_control: dict
    navigation_3d: dict
    cone: Optional[dict] = None
    boundary: Optional[dict] = None

    def metrics(self):
        """Flat metric name -> value map."""
        out = {}
        for name in SUBCATEGORIES:
            out.update(getattr(self, name))
        return out

    def to_dict(self):
        out = {name: dict(getattr(self, name)) for name in SUBCATEGORIES}
        if self.cone is not None:
            out["navigation_3d"]["cone"] = dict(self.cone)
        if self.boundary is not None:
            out["navigation_3d"]["boundary"] = dict(self.boundary)
        return out


def group_by_subcategory(m: MetricSet, cone=None, boundary=None):
    """
    Partition a MetricSet; undefined values stay as explicit None entries.

    Args:
        m (MetricSet): metrics of one hand.
        cone (dict/None): optional frustum parameters shown under navigation_3d.
        boundary (dict/None): optional angle-workspace summary shown under navigation_3d.

    Returns:
        SubcategoryView
    """
    values = m.to_dict()
    return SubcategoryView(
        cone=cone,
        boundary=boundary,
        **{group: {name: values[name] for name in names} for group, names in SUBCATEGORIES.items()},
    )


def relative_difference(left, right):
    """(right - left) / left; None when undefined."""
    if left is None or right is None or left == 0:
        return None
    return (right - left) / left


def _hand_notes(hand, metrics):
    notes = []
    for name, message in metrics.failures.items():
        notes.append(f"{hand}: metric '{name}' could not be computed: {message}")
    if metrics.fluidity is None and metrics.jerk is not None:
        notes.append(f"{hand}: fluidity undefined, jerk {metrics.jerk:.3g} mm/s^3 below epsilon")
    return notes


def _observations(rows):
    observations = []
    for row in rows:
        rel = row["relative_difference"]
        if rel is None or rel == 0:
            continue
        if row["metric"] in _ECONOMY_METRICS:
            hand = "right" if rel < 0 else "left"
            observations.append(
                f"{hand} hand has the smaller {row['metric']} ({rel:+.1%} right vs left), "
                "indicating a more optimized trajectory"
            )
        elif row["metric"] == "fluidity":
            hand = "right" if rel > 0 else "left"
            observations.append(f"{hand} hand moves more fluidly ({rel:+.1%} right vs left)")
    return observations


@dataclass
class SessionReport:
    """
    Report of one recording session.

    Args:
        left, right (SubcategoryView/None): per-hand views; at least one is present.
        comparison (list/None): per-metric rows with left, right and relative_difference.
        observations (list): textual comparison highlights.
        validation (dict/None): per-channel MSE block from a reference comparison.
        config (dict): the MetricConfig and Calibration used.
        notes (list): dropped samples, undefined metrics and warnings.
    """

    left: Optional[SubcategoryView] = None
    right: Optional[SubcategoryView] = None
    comparison: Optional[list] = None
    observations: list = field(default_factory=list)
    validation: Optional[dict] = None
    config: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def hands(self):
        return [hand for hand in HANDS if getattr(self, hand) is not None]

    @property
    def has_failures(self):
        return any("could not be computed" in note for note in self.notes)

    def to_dict(self):
        session = {hand: getattr(self, hand).to_dict() for hand in self.hands}
        out = {"session": session}
        if self.comparison is not None:
            out["comparison"] = {"rows": self.comparison, "observations": list(self.observations)}
        if self.validation is not None:
            out["validation"] = {"mse": self.validation}
        out["units"] = dict(METRIC_UNITS)
        out["config"] = self.config
        out["notes"] = list(self.notes) + [SCHEMA_NOTE]
        return out

    def to_json(self):
        """Deterministic JSON text; results use fixed precision, the config echo stays exact."""
        document = self.to_dict()
        for key in ("session", "comparison", "validation"):
            if key in document:
                document[key] = rounded(document[key])
        return json.dumps(document, indent=2) + "\n"

    def to_frame(self):
        return frame_from_document(self.to_dict())

    def to_data_container(self):
        return DataContainer(self.to_dict(), table_name="session_report")


def _config_block(metric_config, calibration):
    config = {}
    if metric_config is not None:
        config["metric_config"] = metric_config.to_dict()
    if calibration is not None:
        config["calibration"] = calibration.to_dict()
    return config


def _views(left, right, cones, boundaries):
    cones = cones or {}
    boundaries = boundaries or {}
    return {
        hand: None if metrics is None else group_by_subcategory(metrics, cones.get(hand), boundaries.get(hand))
        for hand, metrics in (("left", left), ("right", right))
    }


def session_report(left=None, right=None, mse=None, metric_config=None, calibration=None,
                   notes=(), cones=None, boundaries=None):
    """
    Report for one or two hands; with both hands this is :func:`bimanual_report`.

    Args:
        left, right (MetricSet/None): metrics per hand.
        mse (dict/None): validation block, channel -> {"mse", "rmse", ...}.
        metric_config (MetricConfig/None): echoed in the report.
        calibration (Calibration/None): echoed in the report.
        notes (iterable): notes collected upstream, e.g. dropped samples.
        cones (dict/None): hand -> workspace_cone result.
        boundaries (dict/None): hand -> WorkspaceBoundary.summary() result.
    """
    if left is None and right is None:
        raise InvalidInputError("A session report needs the metrics of at least one hand.")
    if left is not None and right is not None:
        return bimanual_report(left, right, mse, metric_config, calibration, notes, cones, boundaries)
    all_notes = list(notes)
    for hand, metrics in (("left", left), ("right", right)):
        if metrics is not None:
            all_notes.extend(_hand_notes(hand, metrics))
    return SessionReport(
        validation=mse,
        config=_config_block(metric_config, calibration),
        notes=all_notes,
        **_views(left, right, cones, boundaries),
    )


def bimanual_report(left: MetricSet, right: MetricSet, mse=None, metric_config=None,
                    calibration=None, notes=(), cones=None, boundaries=None):
    """Side-by-side report of both hands with per-metric relative differences."""
    if left is None or right is None:
        raise InvalidInputError("A bimanual report needs the metrics of both hands.")
    all_notes = list(notes)
    if left.time_total is not None and right.time_total is not None:
        longer = max(left.time_total, right.time_total)
        if longer > 0 and abs(right.time_total - left.time_total) > DURATION_TOLERANCE * longer:
            message = (
                f"Session durations differ by more than {DURATION_TOLERANCE:.0%}: "
                f"left {left.time_total:.3f} s, right {right.time_total:.3f} s"
            )
            warnings.warn(message)
            state.logger.warning(message)
            all_notes.append(message)
    rows = []
    left_values, right_values = left.to_dict(), right.to_dict()
    for name in METRIC_FIELDS:
        rel = relative_difference(left_values[name], right_values[name])
        if rel is None:
            all_notes.append(f"relative difference of {name} is undefined")
        rows.append(
            {"metric": name, "left": left_values[name], "right": right_values[name], "relative_difference": rel}
        )
    all_notes.extend(_hand_notes("left", left))
    all_notes.extend(_hand_notes("right", right))
    return SessionReport(
        comparison=rows,
        observations=_observations(rows),
        validation=mse,
        config=_config_block(metric_config, calibration),
        notes=all_notes,
        **_views(left, right, cones, boundaries),
    )


def frame_from_document(document):
    """
    Flat table of a report document: one row per metric per hand with columns hand,
    subcategory, metric, value and unit.
    """
    if "session" not in document:
        raise ParseError("Report document has no 'session' block.")
    rows = []
    for hand in HANDS:
        groups = document["session"].get(hand)
        if groups is None:
            continue
        for subcategory, names in SUBCATEGORIES.items():
            for name in names:
                rows.append(
                    {
                        "hand": hand,
                        "subcategory": subcategory,
                        "metric": name,
                        "value": groups[subcategory][name],
                        "unit": METRIC_UNITS[name],
                    }
                )
    return pandas.DataFrame(rows, columns=["hand", "subcategory", "metric", "value", "unit"])


def side_by_side(document):
    """Metrics as rows and hands as columns."""
    frame = frame_from_document(document)
    table = frame.pivot(index=["subcategory", "metric"], columns="hand", values="value")
    order = [(group, name) for group, names in SUBCATEGORIES.items() for name in names]
    return table.reindex(order)
