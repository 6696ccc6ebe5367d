# -*- coding: utf-8 -*-
#
from concurrent.futures import ThreadPoolExecutor

from django.conf import settings

from common.local import thread_local, _find


def ordered_thread_map(func, items, max_workers=None):
    """
    并发执行 func(item), 结果按提交顺序返回
    :param func: 纯函数
    :param items: 输入序列
    :param max_workers: 默认 settings.LOOPSPACE_WORKERS
    """
    items = list(items)
    workers = max_workers or settings.LOOPSPACE_WORKERS
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    context = _find('current_command')

    def run(item):
        # 子线程继承当前命令上下文, 日志里才有 runUuid
        if context is not None:
            thread_local.current_command = context
        return func(item)

    with ThreadPoolExecutor(max_workers=min(workers, len(items)), thread_name_prefix='loopspace') as executor:
        return list(executor.map(run, items))
