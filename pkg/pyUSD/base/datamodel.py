import json
import os
import pydantic
import yaml
import numpy as np

from h5py._hl.files import File as H5File
from pydantic import validator
from typing import Dict, IO, Union

from pyUSD.base.ioutils.hdf5 import write_hdf5
from pyUSD.base.utils import complex_to_pairs
from pyUSD.tools.utils import YAMLDumper


class DataModel(pydantic.BaseModel):
    class Config:
        allow_mutation = False
        use_enum_values = True
        arbitrary_types_allowed = True
        allow_population_by_field_name = True

    # ! Exporters
    def to_dict(self, exclude_none=True, **kwargs):
        data = super().dict(exclude_none=exclude_none, by_alias=True, **kwargs)

        # Convert all numpy content into builtins, complex
        # numbers become [re, im] pairs
        data = self._convert_types(data, exclude_none)

        # Add source for reproducibility
        data["__source__"] = {"root": self.__class__.__name__}

        return data

    def _convert_types(self, data, exclude_none):
        """Converts numpy arrays, numpy scalars and complex numbers to builtins."""

        nu_data = {}

        for key, value in data.items():

            if isinstance(value, (list, tuple)):
                nu_data[key] = [
                    self._check_and_convert_sub(element, exclude_none)
                    for element in value
                ]

            elif isinstance(value, dict):
                nu_data[key] = self._convert_types(value, exclude_none)

            else:
                nu_data[key] = self._check_and_convert_sub(value, exclude_none)

        return nu_data

    def _check_and_convert_sub(self, element, exclude_none):
        """Helper function used to trigger recursion on deeply nested lists."""

        if isinstance(element, dict):
            return self._convert_types(element, exclude_none)

        if isinstance(element, (list, tuple)):
            return [self._check_and_convert_sub(e, exclude_none) for e in element]

        if isinstance(element, (np.ndarray, complex, np.complexfloating)):
            return complex_to_pairs(element)

        if isinstance(element, np.generic):
            return element.item()

        return element

    def json(self, indent: int = 2, **kwargs):
        return json.dumps(self.to_dict(**kwargs), indent=indent, default=self._json_dump)

    @staticmethod
    def _json_dump(value):
        """Helper function to export nd-arrays in a proper way"""

        if isinstance(value, np.ndarray):
            return complex_to_pairs(value)

        return str(value)

    def yaml(self, **kwargs):
        return yaml.dump(
            self.to_dict(**kwargs), Dumper=YAMLDumper, default_flow_style=False, sort_keys=False
        )

    def hdf5(self, file: Union[H5File, str]) -> None:
        """Writes the object instance to HDF5."""
        write_hdf5(self, file)

    # ! Inherited Initializers
    @classmethod
    def from_dict(cls, obj: Dict):
        obj = {key: value for key, value in obj.items() if key != "__source__"}
        return cls.parse_obj(obj)

    @classmethod
    def from_json_string(cls, json_string: str):
        return cls.from_dict(json.loads(json_string))

    @classmethod
    def from_json(cls, handler: IO):
        return cls.from_dict(json.load(handler))

    @classmethod
    def from_yaml_string(cls, yaml_string: str):
        return cls.from_dict(yaml.safe_load(yaml_string))

    @classmethod
    def from_yaml(cls, handler: IO):
        return cls.from_dict(yaml.safe_load(handler))

    @classmethod
    def from_file(cls, path: str):
        """Reads a JSON or YAML file, the format is taken from the extension."""

        extension = os.path.basename(path).split(".")[-1].lower()

        with open(path, "r") as handler:
            if extension == "json":
                return cls.from_json(handler)
            elif extension in ("yaml", "yml"):
                return cls.from_yaml(handler)

        raise TypeError(
            f"File format of '{extension}' is not supported. Please consider using JSON or YAML."
        )

    # ! Validators
    @validator("*")
    def freeze_numpy_content(cls, value):
        """Validator used to make array content immutable."""
        if isinstance(value, np.ndarray) and value.flags.writeable:
            value = np.array(value, copy=True)
            value.setflags(write=False)
            return value
        elif isinstance(value, np.str_):
            return str(value)
        else:
            return value
