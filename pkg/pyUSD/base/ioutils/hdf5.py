import numpy as np

from typing import Any, Dict, Union

from h5py._hl.files import File as H5File
from h5py._hl.group import Group as H5Group

import h5py


def write_hdf5(dataset, file: Union[H5File, str]):
    """Writes a given pyUSD model to HDF5.

    Nested models become groups, arrays become datasets and everything
    else is stored as an attribute. Complex arrays keep their complex dtype.
    """

    close = False
    if isinstance(file, str):
        file = h5py.File(file, "w")
        close = True

    try:
        _write_source(dataset, file)
        _write_group(_native_dict(dataset), file)
    finally:
        if close:
            file.close()


def _native_dict(dataset) -> Dict[str, Any]:
    """Pydantic dict that keeps numpy arrays as they are"""
    return dataset.dict(exclude_none=True, by_alias=True)


def _write_source(dataset, file: H5File):
    """Writes source information"""

    group = file.require_group("__source__")
    group.attrs["root"] = dataset.__class__.__name__


def _write_group(data: Dict[str, Any], h5obj: Union[H5File, H5Group]):
    for name, value in data.items():

        if isinstance(value, dict):
            _write_group(value, _get_group(h5obj, name))

        elif isinstance(value, (list, tuple)) and any(
            isinstance(entry, dict) for entry in value
        ):
            # Lists of models are stored as numbered sub-groups
            group = _get_group(h5obj, name)
            for index, entry in enumerate(value):
                _write_group(entry, _get_group(group, str(index)))

        elif isinstance(value, np.ndarray):
            _write_array(name, value, h5obj)

        elif isinstance(value, (list, tuple)):
            _write_array(name, np.asarray(value), h5obj)

        else:
            _write_attr(name, value, h5obj)


def _write_attr(name, value, h5obj: Union[H5File, H5Group]):
    """Writes an attribute to an HDF5 root or group"""

    if isinstance(value, bool):
        value = np.bool_(value)

    h5obj.attrs[name] = value


def _write_array(name, data: np.ndarray, group):
    """Writes an ndarray to an HDF5 file"""

    if data.dtype.kind in ("U", "O"):
        # HDF5 does not like numpy unicode
        data = np.array(data.tolist(), dtype=h5py.string_dtype())

    group.create_dataset(name=name, data=data)


def _get_group(file: Union[H5File, H5Group], prefix: str):
    """Fetches or creates an HDF5 group"""
    return file.require_group(prefix)
