#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : exception
# date : 10/18/2026
from logging import getLogger

from django.conf import settings
from django.core.management import CommandError
from rest_framework.exceptions import APIException

logger = getLogger('drf_exception')
unexpected_exception_logger = getLogger('unexpected_exception')


def _detail_text(detail):
    if isinstance(detail, dict):
        return '; '.join(f'{key}: {_detail_text(value)}' for key, value in detail.items())
    if isinstance(detail, (list, tuple)):
        return '; '.join(_detail_text(value) for value in detail)
    return str(detail)


def command_exception_handler(exc, command_name, returncode=1) -> CommandError:
    """
    把命令执行中的异常转成 CommandError, 已知的领域异常只记录信息, 未知异常记录堆栈
    """
    if isinstance(exc, CommandError):
        return exc
    if isinstance(exc, APIException):
        message = f'[{exc.default_code}] {_detail_text(exc.detail)}'
        logger.error(f'{command_name} ERROR: {message}')
        if settings.DEBUG:
            logger.exception('Print traceback exception for Debug')
    else:
        message = f'{exc.__class__.__name__}: {exc}'
        unexpected_exception_logger.exception(f'{command_name} unexpected error')
    return CommandError(message, returncode=returncode)
