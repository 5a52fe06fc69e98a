# coding: utf-8
# Copyright (c) rcm_tracker developers
# Distributed under the terms of "New BSD License", see the LICENSE file.

"""Reading parameter objects from JSON/YAML files and echoing them as DataContainers."""

import json
import os
from dataclasses import fields

import yaml
from pyiron_base import DataContainer

from rcm_tracker.utils.errors import ParseError

__author__ = "rcm_tracker developers"
__copyright__ = "Copyright 2026, rcm_tracker developers"
__version__ = "0.1"
__maintainer__ = "rcm_tracker developers"
__status__ = "development"
__date__ = "Oct 18, 2026"


def read_config_file(file_name):
    """
    Parse a JSON or YAML file into a DataContainer.

        Args:
            file_name (str): path ending in .json, .yml or .yaml
        Returns:
            DataContainer: the parsed mapping
    """
    if not os.path.isfile(file_name):
        raise ParseError(f"Config file '{file_name}' does not exist")
    try:
        with open(file_name) as f:
            if file_name.endswith((".yml", ".yaml")):
                data = yaml.safe_load(f)
            elif file_name.endswith(".json"):
                data = json.load(f)
            else:
                raise ParseError(f"Config file '{file_name}' is neither JSON nor YAML")
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise ParseError(f"Could not parse config file '{file_name}': {e}") from e
    if not isinstance(data, dict):
        raise ParseError(f"Config file '{file_name}' does not contain a mapping")
    return DataContainer(data)


def _builtin(value):
    if hasattr(value, "_asdict"):
        return {k: _builtin(v) for k, v in value._asdict().items()}
    if isinstance(value, (tuple, list)):
        return [_builtin(v) for v in value]
    return value


class ConfigMixin:
    """Shared (de)serialization for the frozen parameter dataclasses."""

    def to_dict(self):
        return {f.name: _builtin(getattr(self, f.name)) for f in fields(self)}

    def to_data_container(self):
        return DataContainer(self.to_dict(), table_name=type(self).__name__)

    @classmethod
    def _convert(cls, values):
        """Hook for subclasses to turn nested builtins back into their types."""
        return values

    @classmethod
    def from_dict(cls, values):
        known = [f.name for f in fields(cls)]
        unknown = sorted(set(values) - set(known))
        if len(unknown) > 0:
            raise ParseError(f"Unknown {cls.__name__} keys {unknown}; expected a subset of {known}")
        try:
            return cls(**cls._convert(dict(values)))
        except (TypeError, ValueError) as e:
            raise ParseError(f"Invalid {cls.__name__}: {e}") from e

    @classmethod
    def from_file(cls, file_name):
        return cls.from_dict(read_config_file(file_name).to_builtin())
