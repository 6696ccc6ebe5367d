# 以这些字符开头的单元格会被表格软件当作公式
CSV_FILE_ESCAPE_CHARS = ['=', '@', '+']
