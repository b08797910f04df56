"""The 108 "vertical", "horizontal" and "crossed" tile states on C^6 x C^6 x C^6.

Each row is (label, A, B, C); a factor like "2-3" means
|2> - |3>. Labels are kind + k + i.
"""

TABLE1 = (
    ("V00", "0", "2-3", "0"),
    ("H00", "1-2", "0", "0"),
    ("C00", "0", "0", "5-0"),
    ("V01", "0", "3-4", "1"),
    ("H01", "0-1", "0", "1"),
    ("C01", "0", "1", "0-1"),
    ("V02", "0", "4-5", "2"),
    ("H02", "5-0", "0", "2"),
    ("C02", "0", "2", "1-2"),
    ("V03", "0", "5-0", "3"),
    ("H03", "4-5", "0", "3"),
    ("C03", "0", "3", "2-3"),
    ("V04", "0", "0-1", "4"),
    ("H04", "3-4", "0", "4"),
    ("C04", "0", "4", "3-4"),
    ("V05", "0", "1-2", "5"),
    ("H05", "2-3", "0", "5"),
    ("C05", "0", "5", "4-5"),
    ("V10", "1", "3-4", "0"),
    ("H10", "2-3", "1", "0"),
    ("C10", "1", "0", "4-5"),
    ("V11", "1", "4-5", "1"),
    ("H11", "1-2", "1", "1"),
    ("C11", "1", "1", "5-0"),
    ("V12", "1", "5-0", "2"),
    ("H12", "0-1", "1", "2"),
    ("C12", "1", "2", "0-1"),
    ("V13", "1", "0-1", "3"),
    ("H13", "5-0", "1", "3"),
    ("C13", "1", "3", "1-2"),
    ("V14", "1", "1-2", "4"),
    ("H14", "4-5", "1", "4"),
    ("C14", "1", "4", "2-3"),
    ("V15", "1", "2-3", "5"),
    ("H15", "3-4", "1", "5"),
    ("C15", "1", "5", "3-4"),
    ("V20", "2", "4-5", "0"),
    ("H20", "3-4", "2", "0"),
    ("C20", "2", "0", "3-4"),
    ("V21", "2", "5-0", "1"),
    ("H21", "2-3", "2", "1"),
    ("C21", "2", "1", "4-5"),
    ("V22", "2", "0-1", "2"),
    ("H22", "1-2", "2", "2"),
    ("C22", "2", "2", "5-0"),
    ("V23", "2", "1-2", "3"),
    ("H23", "0-1", "2", "3"),
    ("C23", "2", "3", "0-1"),
    ("V24", "2", "2-3", "4"),
    ("H24", "5-0", "2", "4"),
    ("C24", "2", "4", "1-2"),
    ("V25", "2", "3-4", "5"),
    ("H25", "4-5", "2", "5"),
    ("C25", "2", "5", "2-3"),
    ("V30", "3", "5-0", "0"),
    ("H30", "4-5", "3", "0"),
    ("C30", "3", "0", "2-3"),
    ("V31", "3", "0-1", "1"),
    ("H31", "3-4", "3", "1"),
    ("C31", "3", "1", "3-4"),
    ("V32", "3", "1-2", "2"),
    ("H32", "2-3", "3", "2"),
    ("C32", "3", "2", "4-5"),
    ("V33", "3", "2-3", "3"),
    ("H33", "1-2", "3", "3"),
    ("C33", "3", "3", "5-0"),
    ("V34", "3", "3-4", "4"),
    ("H34", "0-1", "3", "4"),
    ("C34", "3", "4", "0-1"),
    ("V35", "3", "4-5", "5"),
    ("H35", "5-0", "3", "5"),
    ("C35", "3", "5", "1-2"),
    ("V40", "4", "0-1", "0"),
    ("H40", "5-0", "4", "0"),
    ("C40", "4", "0", "1-2"),
    ("V41", "4", "1-2", "1"),
    ("H41", "4-5", "4", "1"),
    ("C41", "4", "1", "2-3"),
    ("V42", "4", "2-3", "2"),
    ("H42", "3-4", "4", "2"),
    ("C42", "4", "2", "3-4"),
    ("V43", "4", "3-4", "3"),
    ("H43", "2-3", "4", "3"),
    ("C43", "4", "3", "4-5"),
    ("V44", "4", "4-5", "4"),
    ("H44", "1-2", "4", "4"),
    ("C44", "4", "4", "5-0"),
    ("V45", "4", "5-0", "5"),
    ("H45", "0-1", "4", "5"),
    ("C45", "4", "5", "0-1"),
    ("V50", "5", "1-2", "0"),
    ("H50", "0-1", "5", "0"),
    ("C50", "5", "0", "0-1"),
    ("V51", "5", "2-3", "1"),
    ("H51", "5-0", "5", "1"),
    ("C51", "5", "1", "1-2"),
    ("V52", "5", "3-4", "2"),
    ("H52", "4-5", "5", "2"),
    ("C52", "5", "2", "2-3"),
    ("V53", "5", "4-5", "3"),
    ("H53", "3-4", "5", "3"),
    ("C53", "5", "3", "3-4"),
    ("V54", "5", "5-0", "4"),
    ("H54", "2-3", "5", "4"),
    ("C54", "5", "4", "4-5"),
    ("V55", "5", "0-1", "5"),
    ("H55", "1-2", "5", "5"),
    ("C55", "5", "5", "5-0"),
)
