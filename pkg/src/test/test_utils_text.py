
from mtsexplain.utils.text import format_table, indent_text


def test_indent_text():
  assert indent_text('a\nb', 2) == '  a\n  b'
  assert indent_text('x', '> ') == '> x'
  assert indent_text('', 4) == ''


def test_format_table():
  text = format_table(['name', 'rank'], [['XCM', 2.5], ['MLSTM-FCN', 10]])
  assert text.split('\n') == [
    'name' + ' ' * 7 + 'rank',
    'XCM' + ' ' * 9 + '2.5',
    'MLSTM-FCN' + ' ' * 4 + '10',
  ]

  # trailing padding of the last column is stripped
  assert format_table(['a', 'bb'], [['ccc', 'd']], align='ll') == 'a    bb\nccc  d'
