import json
import logging
import numbers
import os
from os import path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from autogbts import exc
from autogbts.conf import setting
from autogbts.matrix.complex_matrix import ComplexMatrix

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


class Beamsplitter:
    def __init__(self, mode: int, theta: float, phi: float = 0.0):
        """
        A beamsplitter coupling the adjacent modes (mode, mode + 1), acting on their annihilation operators as

            ( cos theta                 -exp(-i phi) sin theta )
            ( exp(i phi) sin theta       cos theta             )

        Parameters
        ----------
        mode
            The 1-based first mode of the pair.
        theta
            The transmission angle, where pi / 4 is a 50:50 beamsplitter.
        phi
            The phase angle.
        """
        self.mode = int(mode)
        self.theta = float(theta)
        self.phi = float(phi)

    @property
    def modes(self) -> Tuple[int, ...]:
        return self.mode, self.mode + 1

    @property
    def matrix(self) -> np.ndarray:
        cos = np.cos(self.theta)
        sin = np.sin(self.theta)
        return np.array(
            [
                [cos, -np.exp(-1j * self.phi) * sin],
                [np.exp(1j * self.phi) * sin, cos],
            ],
            dtype=np.complex128,
        )

    @property
    def dict(self) -> dict:
        return {
            "type": "beamsplitter",
            "modes": list(self.modes),
            "theta": self.theta,
            "phi": self.phi,
        }

    def __repr__(self):
        return f"Beamsplitter(modes={self.modes}, theta={self.theta}, phi={self.phi})"


class Phase:
    def __init__(self, mode: int, delta: float):
        """
        A phase shifter multiplying the annihilation operator of `mode` by exp(i delta).
        """
        self.mode = int(mode)
        self.delta = float(delta)

    @property
    def modes(self) -> Tuple[int, ...]:
        return (self.mode,)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[np.exp(1j * self.delta)]], dtype=np.complex128)

    @property
    def dict(self) -> dict:
        return {"type": "phase", "mode": self.mode, "delta": self.delta}

    def __repr__(self):
        return f"Phase(mode={self.mode}, delta={self.delta})"


Gate = Union[Beamsplitter, Phase]


def gate_from_dict(dict_: dict) -> Gate:
    """
    Create a gate from its dictionary representation, rejecting unknown types and fields.
    """
    if not isinstance(dict_, dict) or "type" not in dict_:
        raise exc.FormatException(f"A gate record must be an object with a type, not {dict_}.")

    if dict_["type"] == "beamsplitter":

        check_fields(dict_=dict_, required=("type", "modes", "theta"), optional=("phi",))

        modes = dict_["modes"]

        if not isinstance(modes, list) or len(modes) != 2:
            raise exc.FormatException(
                f"A beamsplitter acts on a list of two modes, not {modes}."
            )

        first, second = (integer_from(value=mode, name="mode") for mode in modes)

        if second != first + 1:
            raise exc.CircuitException(
                f"Beamsplitters couple adjacent modes only, not modes {first} and {second}."
            )

        return Beamsplitter(
            mode=first,
            theta=real_from(value=dict_["theta"], name="theta"),
            phi=real_from(value=dict_.get("phi", 0.0), name="phi"),
        )

    if dict_["type"] == "phase":

        check_fields(dict_=dict_, required=("type", "mode", "delta"))

        return Phase(
            mode=integer_from(value=dict_["mode"], name="mode"),
            delta=real_from(value=dict_["delta"], name="delta"),
        )

    raise exc.FormatException(f"Unknown gate type {dict_['type']}.")


def check_fields(dict_: dict, required: Sequence[str], optional: Sequence[str] = ()):

    missing = [name for name in required if name not in dict_]

    if missing:
        raise exc.FormatException(f"Missing fields {missing} in {dict_}.")

    unknown = [name for name in dict_ if name not in required and name not in optional]

    if unknown:
        raise exc.FormatException(f"Unknown fields {unknown} in {dict_}.")


def integer_from(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise exc.FormatException(f"The {name} must be an integer, not {value}.")
    return int(value)


def real_from(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise exc.FormatException(f"The {name} must be a real number, not {value}.")
    return float(value)


def complex_from(value, name: str) -> complex:
    if isinstance(value, list):
        if len(value) != 2:
            raise exc.FormatException(
                f"The {name} must be a number or a pair [re, im], not {value}."
            )
        return complex(real_from(value[0], name), real_from(value[1], name))
    return complex(real_from(value, name), 0.0)


class CircuitSpec:
    def __init__(
        self,
        modes: int,
        r: Optional[Sequence[float]] = None,
        phi_sq: Optional[Sequence[float]] = None,
        beta: Optional[Sequence[complex]] = None,
        eta: float = 1.0,
        layers: Optional[Sequence[Sequence[Gate]]] = None,
    ):
        """
        A shallow local optical circuit: M modes prepared in displaced squeezed states, a sequence of D layers of
        gates acting on one mode or on two adjacent modes, and uniform loss.

        Parameters
        ----------
        modes
            The number of modes M.
        r
            The squeezing magnitude of every mode (0 by default).
        phi_sq
            The squeezing phase of every mode in radians (0 by default).
        beta
            The complex displacement of every mode (0 by default).
        eta
            The energy transmission shared by every mode, in (0, 1].
        layers
            The gate layers in the order they act, each a list of gates acting on disjoint modes.
        """
        if isinstance(modes, bool) or int(modes) != modes or modes < 1:
            raise exc.CircuitException(f"A circuit needs at least one mode, not {modes}.")

        self.modes = int(modes)

        self.r = self.per_mode_from(values=r, name="squeezing magnitudes", default=0.0)
        self.phi_sq = self.per_mode_from(
            values=phi_sq, name="squeezing phases", default=0.0
        )
        self.beta = self.per_mode_from(
            values=beta, name="displacements", default=0.0, dtype=np.complex128
        )

        if np.any(self.r < 0.0):
            raise exc.CircuitException(
                f"Squeezing magnitudes must be non-negative, not {list(self.r)}."
            )

        if np.ndim(eta) != 0:
            raise exc.CircuitException(
                "Only uniform loss is supported, so eta must be a single transmission shared by every mode."
            )

        if not 0.0 < float(eta) <= 1.0:
            raise exc.CircuitException(f"The transmission eta must lie in (0, 1], not {eta}.")

        self.eta = float(eta)

        self.layers = [list(layer) for layer in (layers or [])]

        for index, layer in enumerate(self.layers):
            self.check_layer(layer=layer, index=index)

    def per_mode_from(self, values, name: str, default, dtype=np.float64) -> np.ndarray:

        if values is None:
            return np.full(self.modes, default, dtype=dtype)

        values = np.asarray(values, dtype=dtype).reshape(-1)

        if len(values) != self.modes:
            raise exc.CircuitException(
                f"There must be one of the {name} per mode ({self.modes}), not {len(values)}."
            )

        return values

    def check_layer(self, layer: List[Gate], index: int):

        used = set()

        for gate in layer:

            if isinstance(gate, Beamsplitter) and gate.mode + 1 > self.modes:
                raise exc.CircuitException(
                    f"The beamsplitter on modes {gate.modes} of layer {index + 1} is outside the {self.modes} modes."
                )

            for mode in gate.modes:

                if mode < 1 or mode > self.modes:
                    raise exc.CircuitException(
                        f"Gate {gate} of layer {index + 1} acts on mode {mode}, outside 1..{self.modes}."
                    )

                if mode in used:
                    raise exc.CircuitException(
                        f"Gates of layer {index + 1} overlap on mode {mode}."
                    )

                used.add(mode)

    @property
    def depth(self) -> int:
        """
        The number of layers D, which bounds the bandwidth of the circuit unitary.
        """
        return len(self.layers)

    @property
    def dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "modes": self.modes,
            "eta": self.eta,
            "squeezing": [
                {"r": float(r), "phase": float(phase)}
                for r, phase in zip(self.r, self.phi_sq)
            ],
            "displacement": [[float(beta.real), float(beta.imag)] for beta in self.beta],
            "layers": [[gate.dict for gate in layer] for layer in self.layers],
        }

    @classmethod
    def from_dict(cls, dict_: dict) -> "CircuitSpec":
        """
        Create a circuit from its dictionary representation (the parsed JSON circuit file).
        """
        if not isinstance(dict_, dict):
            raise exc.FormatException("A circuit file must hold a JSON object.")

        check_fields(
            dict_=dict_,
            required=("format_version", "modes"),
            optional=("eta", "squeezing", "displacement", "layers"),
        )

        if dict_["format_version"] != FORMAT_VERSION:
            raise exc.FormatException(
                f"Unsupported circuit format_version {dict_['format_version']}, expected {FORMAT_VERSION}."
            )

        modes = integer_from(value=dict_["modes"], name="modes")

        r = phi_sq = None

        if "squeezing" in dict_:

            squeezing = dict_["squeezing"]

            if not isinstance(squeezing, list):
                raise exc.FormatException("The squeezing must be a list of {r, phase} records.")

            for record in squeezing:
                if not isinstance(record, dict):
                    raise exc.FormatException(
                        f"A squeezing record must be an object {{r, phase}}, not {record}."
                    )
                check_fields(dict_=record, required=("r",), optional=("phase",))

            r = [real_from(record["r"], "r") for record in squeezing]
            phi_sq = [real_from(record.get("phase", 0.0), "phase") for record in squeezing]

        beta = None

        if "displacement" in dict_:

            if not isinstance(dict_["displacement"], list):
                raise exc.FormatException("The displacement must be a list of complex numbers.")

            beta = [complex_from(value, "displacement") for value in dict_["displacement"]]

        eta = dict_.get("eta", 1.0)

        if not isinstance(eta, list):
            eta = real_from(value=eta, name="eta")

        layers = dict_.get("layers", [])

        if not isinstance(layers, list) or not all(isinstance(layer, list) for layer in layers):
            raise exc.FormatException("The layers must be a list of lists of gate records.")

        return cls(
            modes=modes,
            r=r,
            phi_sq=phi_sq,
            beta=beta,
            eta=eta,
            layers=[[gate_from_dict(gate) for gate in layer] for layer in layers],
        )

    @classmethod
    def from_json(cls, file_path: str) -> "CircuitSpec":

        with open(file_path) as infile:
            try:
                dict_ = json.load(infile)
            except json.JSONDecodeError as e:
                raise exc.FormatException(f"The circuit file {file_path} is not valid JSON: {e}")

        return cls.from_dict(dict_=dict_)

    def output_to_json(self, file_path: str, overwrite: bool = False):

        file_dir = os.path.split(file_path)[0]

        if file_dir and not path.exists(file_dir):
            os.makedirs(file_dir)

        if overwrite and path.exists(file_path):
            os.remove(file_path)
        elif not overwrite and path.exists(file_path):
            raise FileExistsError(
                "The file ",
                file_path,
                " already exists. Set overwrite=True to overwrite this file",
            )

        with open(file_path, "w+") as f:
            json.dump(self.dict, f, indent=4)

    @classmethod
    def random(
        cls,
        modes: int,
        depth: int,
        seed: int = 0,
        r_min: float = 0.1,
        r_max: float = 0.5,
        eta: float = 1.0,
        displacement: float = 0.0,
    ) -> "CircuitSpec":
        """
        A seeded brickwork circuit: layer l holds beamsplitters with random angles on the pairs (j, j + 1) with j
        of the parity of l, and random phases on the modes those leave out.

        Parameters
        ----------
        modes
            The number of modes M.
        depth
            The number of layers D.
        seed
            The seed of the generator of every random parameter.
        r_min, r_max
            The range of the uniformly drawn squeezing magnitudes.
        eta
            The uniform transmission.
        displacement
            The standard deviation of the complex Gaussian displacements (none by default).
        """
        rng = np.random.default_rng(seed)

        r = rng.uniform(r_min, r_max, size=modes)
        phi_sq = rng.uniform(0.0, 2.0 * np.pi, size=modes)

        beta = None

        if displacement > 0.0:
            beta = displacement * (
                rng.standard_normal(modes) + 1j * rng.standard_normal(modes)
            ) / np.sqrt(2.0)

        layers = []

        for layer_index in range(depth):

            layer = []
            covered = set()

            for mode in range(1 + layer_index % 2, modes, 2):
                layer.append(
                    Beamsplitter(
                        mode=mode,
                        theta=rng.uniform(0.0, 0.5 * np.pi),
                        phi=rng.uniform(0.0, 2.0 * np.pi),
                    )
                )
                covered.update((mode, mode + 1))

            for mode in range(1, modes + 1):
                if mode not in covered:
                    layer.append(Phase(mode=mode, delta=rng.uniform(0.0, 2.0 * np.pi)))

            layers.append(layer)

        return cls(modes=modes, r=r, phi_sq=phi_sq, beta=beta, eta=eta, layers=layers)

    def __repr__(self):
        return f"CircuitSpec(modes={self.modes}, depth={self.depth}, eta={self.eta})"


def build_unitary(circuit: CircuitSpec) -> ComplexMatrix:
    """
    Returns the M x M unitary U of the circuit, the product of its layer unitaries with the first layer acting
    first. Every layer is block diagonal with 1 x 1 and 2 x 2 blocks, so U has bandwidth at most D.
    """
    unitary = np.eye(circuit.modes, dtype=np.complex128)

    for layer in circuit.layers:

        layer_unitary = np.eye(circuit.modes, dtype=np.complex128)

        for gate in layer:
            indexes = np.asarray(gate.modes) - 1
            layer_unitary[np.ix_(indexes, indexes)] = gate.matrix

        unitary = layer_unitary @ unitary

    deviation = float(
        np.max(np.abs(unitary.conj().T @ unitary - np.eye(circuit.modes)))
    )

    if deviation > setting("gaussian", "unitary_tol", 1.0e-12):
        raise exc.NumericalException(
            f"The circuit unitary deviates from unitarity by {deviation:.3e}."
        )

    return ComplexMatrix(unitary)
