import numpy as np

from typing import Any, Union


def complex_to_pairs(value: Union[np.ndarray, complex]) -> Any:
    """Converts complex scalars and arrays into nested [re, im] lists"""

    array = np.asarray(value)

    if np.iscomplexobj(array):
        stacked = np.stack([array.real, array.imag], axis=-1)
        return stacked.tolist()

    return array.tolist()


def pairs_to_complex(value: Any) -> np.ndarray:
    """Converts nested [re, im] lists into a complex array.

    Arrays that already carry a complex dtype are passed through. Plain
    nested lists are read with their innermost axis as the (re, im) pair.
    """

    if isinstance(value, np.ndarray) and np.iscomplexobj(value):
        return value.astype(complex)

    if isinstance(value, (complex, np.complexfloating)):
        return np.asarray(value, dtype=complex)

    array = np.asarray(value)

    if np.iscomplexobj(array):
        return array.astype(complex)

    if isinstance(value, np.ndarray):
        # Real numpy arrays are taken as real-valued complex arrays
        return array.astype(complex)

    if array.ndim == 0 or array.shape[-1] != 2:
        raise ValueError(
            f"Expected complex numbers as [re, im] pairs, got shape {array.shape}."
        )

    return array[..., 0].astype(float) + 1j * array[..., 1].astype(float)


def freeze(array: np.ndarray) -> np.ndarray:
    """Returns a read-only copy of the given array"""

    frozen = np.array(array, copy=True)
    frozen.setflags(write=False)
    return frozen


class ComplexArray(np.ndarray):
    """Pydantic field type for complex numpy arrays.

    Accepts complex arrays, lists of Python complex numbers or nested
    [re, im] pairs as found in JSON/YAML files. Stored read-only.
    """

    @classmethod
    def __get_validators__(cls):
        yield cls.validate

    @classmethod
    def validate(cls, value):
        try:
            array = pairs_to_complex(value)
        except (TypeError, ValueError) as e:
            raise ValueError(f"Cannot interpret value as complex array: {e}")

        if not np.all(np.isfinite(array)):
            raise ValueError("Complex array contains non-finite entries.")

        return freeze(array)


class RealArray(np.ndarray):
    """Pydantic field type for real numpy arrays, stored read-only."""

    @classmethod
    def __get_validators__(cls):
        yield cls.validate

    @classmethod
    def validate(cls, value):
        array = np.asarray(value)

        if np.iscomplexobj(array):
            if np.any(np.abs(array.imag) > 1e-12):
                raise ValueError("Real array has non-vanishing imaginary parts.")
            array = array.real

        try:
            array = array.astype(float)
        except (TypeError, ValueError) as e:
            raise ValueError(f"Cannot interpret value as real array: {e}")

        return freeze(array)


class ComplexScalar(complex):
    """Pydantic field type for a complex number given as complex or [re, im]"""

    @classmethod
    def __get_validators__(cls):
        yield cls.validate

    @classmethod
    def validate(cls, value):
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise ValueError(f"Expected [re, im] pair, got {value}.")
            return complex(float(value[0]), float(value[1]))

        return complex(value)
