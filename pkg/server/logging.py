#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : logging
# date : 10/18/2026
import logging
import os
from logging.handlers import TimedRotatingFileHandler

from server.utils import current_command


class DailyTimedRotatingFileHandler(TimedRotatingFileHandler):
    """
    logs/server.log 滚动到 logs/<日期>/server.log
    命令是偶尔运行的, 日期取被滚动文件所覆盖的那一天, 不是"昨天"
    """

    def rotation_filename(self, default_name):
        source, _, day = default_name.rpartition('.')
        filename = os.path.join(os.path.dirname(source), day, os.path.basename(source))
        os.makedirs(os.path.dirname(filename), exist_ok=True)
        return filename

    def rotator(self, source, dest):
        # 多个命令进程同时运行时, 只有一个进程 rotate 成功
        if os.path.exists(source) and not os.path.exists(dest):
            os.rename(source, dest)


class ServerFormatter(logging.Formatter):
    def format(self, record):
        record.commandName = str(getattr(current_command, 'name', None) or 'LIBRARY')[:16]
        record.runUuid = str(getattr(current_command, 'run_uuid', None) or '')[:8]
        return super().format(record)
