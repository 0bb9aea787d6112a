import pandas as pd

from upcut.terminal import format_table, format_text


def test_format_text():
    df = pd.DataFrame({
        'element': ['a', 'bc'],
        'count': [1, 12_345],
        'holds': [True, False],
    })
    text, width = format_text(df)
    header, first, second = text.splitlines()
    assert header == 'element   count    holds'
    assert first.rstrip() == 'a' + ' ' * 14 + '1   ✅'
    assert second.rstrip() == 'bc' + ' ' * 8 + '12,345   ❌'
    assert width == len(header)


def test_format_table_wraps_titles():
    df = pd.DataFrame({'up_set': ['{}', '{a}']})
    assert format_table(df, 'Up', use_sgr=False).splitlines() == [
        'Up',
        '',
        'up ',
        'set',
        '{} ',
        '{a}',
    ]
