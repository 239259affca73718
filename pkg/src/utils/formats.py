#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
文本格式读写
Text Formats

所有格式均为 UTF-8，每行一条记录，以 # 开头的行为注释。
"""

import csv
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence, TextIO, Tuple, Union

from utils.errors import FormatError

PathLike = Union[str, Path]


def _data_lines(lines: Iterable[str]):
    """跳过空行和注释行，返回 (行号, 内容)"""
    for number, line in enumerate(lines, 1):
        text = line.strip()
        if not text or text.startswith('#'):
            continue
        yield number, text


def parse_integer_rows(lines: Iterable[str], fixed_width: bool = True) -> Tuple[List[Tuple[int, ...]], Optional[int]]:
    """
    解析以空格分隔的整数行

    Args:
        lines: 文本行
        fixed_width: 是否要求每行整数个数与第一行一致（点集格式）

    Returns:
        (整数元组列表, 第一行的宽度；无数据时为 None)
    """
    rows = []
    width = None
    for number, text in _data_lines(lines):
        try:
            row = tuple(int(token) for token in text.split())
        except ValueError:
            raise FormatError(f"第 {number} 行不是整数: {text!r}")
        if width is None:
            width = len(row)
        elif fixed_width and len(row) != width:
            raise FormatError(f"第 {number} 行维数为 {len(row)}，应为 {width}")
        rows.append(row)
    return rows, width


def parse_rational_lines(lines: Iterable[str]) -> List[Fraction]:
    """解析每行一个 p/q 的有理数"""
    values = []
    for number, text in _data_lines(lines):
        try:
            values.append(Fraction(text))
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"第 {number} 行不是有理数: {text!r}")
    return values


def rational_str(value: Fraction) -> str:
    """有理数统一序列化为 "num/den"，避免浮点损失"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def read_lines(path: PathLike) -> List[str]:
    """读取文本文件的所有行"""
    with open(path, 'r', encoding='utf-8') as f:
        return f.readlines()


def write_lines(lines: Iterable[str], path: Optional[PathLike] = None, header: Optional[str] = None):
    """
    写出文本行

    Args:
        lines: 不含换行符的行
        path: 输出路径，None 表示标准输出
        header: 可选的注释头
    """
    stream: TextIO
    if path is None:
        _emit(sys.stdout, lines, header)
        return
    with open(path, 'w', encoding='utf-8', newline='\n') as stream:
        _emit(stream, lines, header)


def _emit(stream: TextIO, lines: Iterable[str], header: Optional[str]):
    if header:
        stream.write(f"# {header}\n")
    for line in lines:
        stream.write(line + '\n')


def format_rows(rows: Iterable[Sequence[int]]) -> List[str]:
    """整数元组格式化为空格分隔的行"""
    return [' '.join(str(value) for value in row) for row in rows]


def write_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], path: Optional[PathLike] = None):
    """写出 CSV（固定换行符，保证字节稳定）"""
    if path is None:
        writer = csv.writer(sys.stdout, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
        return
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)


def dump_json(payload: Any, path: Optional[PathLike] = None):
    """写出 JSON；键顺序由调用方决定"""
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    if path is None:
        sys.stdout.write(text + '\n')
        return
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text + '\n')


def read_integer_set(path: PathLike) -> List[int]:
    """读取整数集合文件（每行一个整数），返回去重后的升序列表"""
    rows, _ = parse_integer_rows(read_lines(path), fixed_width=False)
    values = set()
    for row in rows:
        if len(row) != 1:
            raise FormatError(f"整数集合每行只能有一个整数: {row}")
        values.add(row[0])
    return sorted(values)


def write_integer_set(values: Iterable[int], path: Optional[PathLike] = None, header: Optional[str] = None):
    """按升序写出整数集合"""
    write_lines((str(v) for v in sorted(set(values))), path, header)


def read_rationals(path: PathLike) -> List[Fraction]:
    """读取有理数点集（每行一个 p/q），返回去重后的升序列表"""
    return sorted(set(parse_rational_lines(read_lines(path))))


def write_rationals(values: Iterable[Fraction], path: Optional[PathLike] = None, header: Optional[str] = None):
    """按升序写出有理数点集"""
    write_lines((rational_str(v) for v in sorted(set(values))), path, header)
