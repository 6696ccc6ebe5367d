#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : utils
# date : 10/18/2026
import uuid
from dataclasses import dataclass, field
from functools import partial

from werkzeug.local import LocalProxy

from common.local import thread_local, _find


@dataclass
class CommandContext:
    name: str
    run_uuid: str = field(default_factory=lambda: uuid.uuid4().hex)


def set_current_command(name):
    context = CommandContext(name=name) if name else None
    setattr(thread_local, 'current_command', context)
    return context


def get_current_command():
    return _find('current_command')


current_command = LocalProxy(partial(_find, 'current_command'))
