import importlib
import inspect
import time

from operator import attrgetter
from pathlib import Path
from typing import Callable

from pydantic import BaseModel


class EvalResult(BaseModel):
    name: str
    passed: bool
    seconds: float
    details: dict


class EvalApp:
    def __init__(self, name: str, description: str, run: Callable[[bool], tuple[bool, dict]]):
        self.name = name
        self.description = description.strip().replace('\r', '').split('\n')
        self.run = run

    def evaluate(self, full: bool = False) -> EvalResult:
        start = time.perf_counter()
        passed, details = self.run(full)
        return EvalResult(name=self.name, passed=passed, seconds=round(time.perf_counter() - start, 3),
                          details=details)


def load_description(module_file: str) -> str:
    with open(Path(module_file).parent.joinpath('description.txt'), 'r', encoding='utf-8') as f:
        return f.read()


def find_apps(basedir: Path) -> list[EvalApp]:
    apps = list[EvalApp]()
    for file in sorted(Path(basedir).glob('*/*.py')):
        modpath = '.'.join(file.parent.parts[-3:]) + '.' + file.stem
        items = inspect.getmembers(importlib.import_module(modpath))
        for _, item in items:
            if isinstance(item, EvalApp):
                apps.append(item)
    return sorted(apps, key=attrgetter('name'))
