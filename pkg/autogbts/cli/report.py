import hashlib
import json
import os
import time
from contextlib import contextmanager
from os import path
from typing import Dict, List, Optional


class RunReport:
    def __init__(self, command: List[str]):
        """
        The side channel record of one CLI run: the command line, a SHA-256 digest of every input file, the wall
        clock time of every stage, the hafnian call counts and the output payload.

        Parameters
        ----------
        command
            The command line arguments of the run.
        """
        self.command = list(command)
        self.inputs: Dict[str, str] = {}
        self.timings: Dict[str, float] = {}
        self.calls: Dict[str, int] = {}
        self.output = None

    def add_input(self, file_path: str):

        digest = hashlib.sha256()

        with open(file_path, "rb") as f:
            for block in iter(lambda: f.read(65536), b""):
                digest.update(block)

        self.inputs[file_path] = digest.hexdigest()

    @contextmanager
    def stage(self, name: str):
        """
        Times the body of a `with` block, accumulating into the stage `name`.
        """
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + max(
                time.perf_counter() - start, 0.0
            )

    @property
    def dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "timings": self.timings,
            "calls": self.calls,
            "output": self.output,
        }

    def output_to_json(self, file_path: Optional[str]):

        if file_path is None:
            return

        file_dir = os.path.split(file_path)[0]

        if file_dir and not path.exists(file_dir):
            os.makedirs(file_dir)

        with open(file_path, "w+") as f:
            json.dump(self.dict, f, indent=4)
