import os

from src.const import THREADS_ENV
from src.exceptions import InvalidThreadCountError


class RunConfig:
    def __init__(self, threads: int | None = None):
        if threads is None:
            threads = os.cpu_count() or 1
        if threads < 1:
            raise InvalidThreadCountError(str(threads))
        self.threads = threads

    @classmethod
    def from_env(cls, environ=None) -> 'RunConfig':
        environ = os.environ if environ is None else environ
        raw = environ.get(THREADS_ENV)
        if raw is None or raw == '':
            return cls()
        try:
            threads = int(raw)
        except ValueError:
            raise InvalidThreadCountError(raw)
        if threads < 1:
            raise InvalidThreadCountError(raw)
        return cls(threads=threads)

    def to_dict(self) -> dict:
        return {
            'threads': self.threads
        }

    @classmethod
    def from_dict(cls, run_dict: dict) -> 'RunConfig':
        return cls(
            threads=int(run_dict['threads'])
        )
