#!/usr/bin/env python3
"""
rpq 命令行主入口文件
"""

import sys

from rpq.cli import main as cli_main


def main():
    """
    主函数
    转交给 rpq 命令组，以其退出码退出
    """
    try:
        code = cli_main(sys.argv[1:])
    except Exception as e:
        print(f"rpq 运行失败: {e}")
        sys.exit(1)
    sys.exit(code)


if __name__ == "__main__":
    main()
