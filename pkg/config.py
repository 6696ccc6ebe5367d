#!/usr/bin/env python
# -*- coding:utf-8 -*-
# project : loopspace
# filename : config
# date : 10/18/2026
import json
import os


def read_env():
    """读取 .env 文件的函数"""
    env_dict = {}
    try:
        with open('.env') as f:
            content = f.read()
        for line in content.splitlines():
            if line.startswith('#') or not line.strip():
                continue
            key, value = line.split('=', 1)
            env_dict[key.strip()] = value.strip()
    except IOError:
        pass
    for key, value in env_dict.items():
        os.environ.setdefault(key, value)


# 本地开发时读取 .env, 其余情况直接使用环境变量
if os.path.exists('.env'):
    read_env()

DEBUG = os.getenv('DEBUG', 'False').lower() == 'true'

# DEBUG, INFO, WARNING, ERROR, CRITICAL can set
LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING')

# 写日志文件, 关闭后只输出到 stderr
LOG_TO_FILE = os.getenv('LOG_TO_FILE', 'True').lower() == 'true'

SECRET_KEY = os.getenv('SECRET_KEY', 'loopspace-insecure-4q!w6x@1c9z^h0p3m$7s+e2r8t5y')

# 容差默认值, 长度类容差按曲线直径缩放
EPS_IMAGE_FACTOR = float(os.getenv('EPS_IMAGE_FACTOR', '1e-3'))
EPS_MATCH_FACTOR = float(os.getenv('EPS_MATCH_FACTOR', '1e-2'))
EPS_SECTION = float(os.getenv('EPS_SECTION', '1e-6'))

# 并发计算的线程数 (种子匹配, 旋转候选, 墙枚举)
MATCH_WORKERS = int(os.getenv('MATCH_WORKERS', '4'))

# 输出 JSON 的有效数字位数
OUTPUT_SIGNIFICANT_DIGITS = int(os.getenv('OUTPUT_SIGNIFICANT_DIGITS', '17'))

# 额外安装的 app
LOOPSPACE_APPS = json.loads(os.getenv('LOOPSPACE_APPS', '[]'))
