#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : local
# date : 10/18/2026


from werkzeug.local import Local

thread_local = Local()


def _find(attr):
    return getattr(thread_local, attr, None)
