import json
from os import path

import numpy as np
import pytest

import autogbts as ag
from autogbts import exc
from autogbts.gaussian import circuit as circ


class TestBuildUnitary:
    def test__no_layers_gives_identity(self):

        unitary = ag.build_unitary(ag.CircuitSpec(modes=3))

        assert (np.asarray(unitary) == np.eye(3)).all()

    def test__50_50_beamsplitter(self, beamsplitter_circuit):

        unitary = np.asarray(ag.build_unitary(beamsplitter_circuit))

        assert np.abs(unitary) == pytest.approx(np.full((2, 2), 1.0 / np.sqrt(2.0)), 1.0e-12)
        assert unitary[0, 1] == pytest.approx(-1.0 / np.sqrt(2.0), 1.0e-12)

    def test__phase_gate(self):

        circuit = ag.CircuitSpec(modes=2, layers=[[ag.Phase(mode=2, delta=0.5)]])

        unitary = np.asarray(ag.build_unitary(circuit))

        assert unitary[0, 0] == 1.0
        assert unitary[1, 1] == pytest.approx(np.exp(0.5j), 1.0e-12)

    def test__layers_act_in_order(self):

        first = ag.Beamsplitter(mode=1, theta=0.3, phi=0.2)
        second = ag.Beamsplitter(mode=2, theta=0.7, phi=1.1)

        circuit = ag.CircuitSpec(modes=3, layers=[[first], [second]])

        expected_first = np.eye(3, dtype=np.complex128)
        expected_first[:2, :2] = first.matrix
        expected_second = np.eye(3, dtype=np.complex128)
        expected_second[1:, 1:] = second.matrix

        assert np.asarray(ag.build_unitary(circuit)) == pytest.approx(
            expected_second @ expected_first, abs=1.0e-14
        )

    def test__random_circuit_bandwidth_at_most_depth(self):

        for depth in range(0, 6):
            for seed in range(3):

                circuit = ag.CircuitSpec.random(modes=12, depth=depth, seed=seed)

                assert circuit.depth == depth
                assert ag.bandwidth(ag.build_unitary(circuit)) <= depth


class TestCircuitSpec:
    def test__defaults(self):

        circuit = ag.CircuitSpec(modes=2)

        assert list(circuit.r) == [0.0, 0.0]
        assert list(circuit.beta) == [0.0, 0.0]
        assert circuit.eta == 1.0
        assert circuit.depth == 0

    def test__invalid_parameters__raise_exception(self):

        with pytest.raises(exc.CircuitException):
            ag.CircuitSpec(modes=0)

        with pytest.raises(exc.CircuitException):
            ag.CircuitSpec(modes=2, r=[0.1])

        with pytest.raises(exc.CircuitException):
            ag.CircuitSpec(modes=2, r=[0.1, -0.1])

        with pytest.raises(exc.CircuitException):
            ag.CircuitSpec(modes=2, eta=0.0)

        with pytest.raises(exc.CircuitException):
            ag.CircuitSpec(modes=2, eta=1.5)

        with pytest.raises(exc.CircuitException):
            ag.CircuitSpec(modes=2, eta=[0.9, 0.8])

    def test__invalid_layers__raise_exception(self):

        with pytest.raises(exc.CircuitException):
            ag.CircuitSpec(modes=2, layers=[[ag.Beamsplitter(mode=2, theta=0.1)]])

        with pytest.raises(exc.CircuitException):
            ag.CircuitSpec(modes=2, layers=[[ag.Phase(mode=3, delta=0.1)]])

        with pytest.raises(exc.CircuitException):
            ag.CircuitSpec(
                modes=3,
                layers=[[ag.Beamsplitter(mode=1, theta=0.1), ag.Phase(mode=2, delta=0.1)]],
            )

    def test__random_circuit_is_seeded(self):

        first = ag.CircuitSpec.random(modes=5, depth=3, seed=4, displacement=0.5)
        second = ag.CircuitSpec.random(modes=5, depth=3, seed=4, displacement=0.5)

        assert first.dict == second.dict
        assert ag.CircuitSpec.random(modes=5, depth=3, seed=5).dict != first.dict


class TestCircuitFile:
    def test__json_round_trip(self, lossy_circuit, tmp_path):

        file_path = path.join(str(tmp_path), "circuits", "lossy.json")

        lossy_circuit.output_to_json(file_path=file_path)

        circuit = ag.CircuitSpec.from_json(file_path=file_path)

        assert circuit.dict == lossy_circuit.dict
        assert np.asarray(ag.build_unitary(circuit)) == pytest.approx(
            np.asarray(ag.build_unitary(lossy_circuit)), abs=1.0e-15
        )

        with pytest.raises(FileExistsError):
            lossy_circuit.output_to_json(file_path=file_path)

    def test__minimal_file(self):

        circuit = ag.CircuitSpec.from_dict(
            {
                "format_version": 1,
                "modes": 2,
                "squeezing": [{"r": 0.5}, {"r": 0.2, "phase": 1.0}],
                "displacement": [0.5, [0.1, -0.2]],
                "layers": [[{"type": "beamsplitter", "modes": [1, 2], "theta": 0.3}]],
            }
        )

        assert list(circuit.r) == [0.5, 0.2]
        assert list(circuit.phi_sq) == [0.0, 1.0]
        assert list(circuit.beta) == [0.5, 0.1 - 0.2j]
        assert circuit.layers[0][0].phi == 0.0

    def test__malformed_files__raise_exception(self, tmp_path):

        with pytest.raises(exc.FormatException):
            ag.CircuitSpec.from_dict({"format_version": 2, "modes": 2})

        with pytest.raises(exc.FormatException):
            ag.CircuitSpec.from_dict({"format_version": 1, "modes": 2, "loss": 0.1})

        with pytest.raises(exc.FormatException):
            ag.CircuitSpec.from_dict({"modes": 2})

        with pytest.raises(exc.FormatException):
            ag.CircuitSpec.from_dict([1, 2])

        with pytest.raises(exc.FormatException):
            ag.CircuitSpec.from_dict({"format_version": 1, "modes": "two"})

        file_path = path.join(str(tmp_path), "broken.json")

        with open(file_path, "w") as f:
            f.write("{\"format_version\": 1,")

        with pytest.raises(exc.FormatException):
            ag.CircuitSpec.from_json(file_path=file_path)

    def test__gate_records(self):

        assert isinstance(circ.gate_from_dict({"type": "phase", "mode": 1, "delta": 0.1}), ag.Phase)

        with pytest.raises(exc.FormatException):
            circ.gate_from_dict({"type": "squeezer", "mode": 1})

        with pytest.raises(exc.FormatException):
            circ.gate_from_dict({"type": "phase", "mode": 1, "delta": 0.1, "theta": 0.2})

        with pytest.raises(exc.FormatException):
            circ.gate_from_dict({"type": "phase", "mode": 1.5, "delta": 0.1})

        with pytest.raises(exc.CircuitException):
            circ.gate_from_dict({"type": "beamsplitter", "modes": [1, 3], "theta": 0.1})

    def test__non_uniform_loss__raises_exception(self):

        with pytest.raises(exc.CircuitException):
            ag.CircuitSpec.from_dict({"format_version": 1, "modes": 2, "eta": [0.9, 0.8]})

    def test__dict_is_json_serializable(self, lossy_circuit):

        assert json.loads(json.dumps(lossy_circuit.dict)) == lossy_circuit.dict
