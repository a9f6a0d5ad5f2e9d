# evaluation package: closed-form claims and the table reproducer
